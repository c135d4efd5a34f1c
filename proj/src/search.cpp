#include "lexenum/search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lexenum/lex.hpp"
#include "lexenum/symmetry.hpp"

namespace lexenum {

SearchOrder SearchOrder::identity(int n) {
    SearchOrder o;
    o.sequence.resize(static_cast<std::size_t>(n));
    std::iota(o.sequence.begin(), o.sequence.end(), 0);
    return o;
}

bool SearchOrder::valid(int num_vars) const {
    return static_cast<int>(sequence.size()) == num_vars &&
           is_permutation_image(sequence);
}

std::vector<int> SearchOrder::positions() const {
    std::vector<int> pos(sequence.size());
    for (std::size_t p = 0; p < sequence.size(); ++p)
        pos[static_cast<std::size_t>(sequence[p])] = static_cast<int>(p);
    return pos;
}

namespace {

using Clock = std::chrono::steady_clock;

// One depth-first run. Assignments follow the search order with the smallest
// value first; after each tentative assignment the selected constraints are
// propagated to a fixpoint, then the oracle (when present) is asked whether
// the prefix still extends inside the problem constraints. A rejected value
// is removed from the node's domain, so every node walks its values at most
// once.
class Engine {
public:
    Engine(const Csp& csp, PropagationScope scope, Oracle* oracle,
           const SearchOrder& order, const SolutionSink& sink,
           const SearchLimits& limits, const FailureObserver& on_failure)
        : csp_(csp), scope_(scope), oracle_(oracle), order_(order), sink_(sink),
          limits_(limits), on_failure_(on_failure) {}

    DelayMetrics run() {
        if (!order_.valid(csp_.num_vars))
            throw std::invalid_argument("search order is not a permutation of the variables");
        domains_ = initial_domains(csp_);
        values_.assign(static_cast<std::size_t>(csp_.num_vars), 0);
        gap_start_ = Clock::now();

        if (propagate_fixpoint(csp_, domains_, trail_, scope_, &gap_.propagations) ==
            FixpointResult::fixpoint) {
            if (csp_.num_vars > 0)
                descend(0);
        }
        flush_gap();
        return std::move(metrics_);
    }

private:
    void descend(int depth) {
        const int var = order_.sequence[static_cast<std::size_t>(depth)];
        Domain& dom = domains_[static_cast<std::size_t>(var)];
        while (!dom.empty() && !stopped_) {
            if (gap_.nodes + metrics_.totals.nodes >= limits_.node_budget) {
                stop(Termination::node_budget_exhausted);
                return;
            }
            const int d = dom.min();
            const Trail::Marker m = trail_.mark();
            assign_value(domains_, trail_, var, d);
            assigned_.push(var, d);
            values_[static_cast<std::size_t>(var)] = d;
            ++gap_.nodes;

            bool ok = propagate_fixpoint(csp_, domains_, trail_, scope_,
                                         &gap_.propagations) == FixpointResult::fixpoint;
            if (ok && oracle_)
                ok = consult_oracle();

            if (stopped_) {
                assigned_.pop();
                trail_.undo_to(m, domains_);
                return;
            }
            if (ok) {
                if (depth + 1 == csp_.num_vars)
                    emit();
                else
                    descend(depth + 1);
            } else {
                ++metrics_.failed_nodes;
                if (on_failure_)
                    on_failure_(assigned_);
            }

            assigned_.pop();
            trail_.undo_to(m, domains_);
            // The branch for d is finished for good at this node.
            dom.remove(d);
            trail_.record(var, d);
            ++gap_.values_rejected;
        }
    }

    bool consult_oracle() {
        if (gap_.oracle_calls + metrics_.totals.oracle_calls >=
            limits_.oracle_call_budget) {
            stop(Termination::oracle_budget_exhausted);
            return false;
        }
        ++gap_.oracle_calls;
        const OracleQuery q{csp_, domains_, assigned_};
        switch (oracle_->extends(q)) {
        case OracleAnswer::extendable:
            return true;
        case OracleAnswer::not_extendable:
            return false;
        default:
            stop(Termination::oracle_budget_exhausted);
            return false;
        }
    }

    void stop(Termination why) {
        stopped_ = true;
        metrics_.termination = why;
    }

    void emit() {
        ++metrics_.solutions;
        if (sink_)
            sink_(values_);
        flush_gap();
        gap_start_ = Clock::now();
    }

    void flush_gap() {
        gap_.wall_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                                 gap_start_)
                .count());
        metrics_.totals.nodes += gap_.nodes;
        metrics_.totals.values_rejected += gap_.values_rejected;
        metrics_.totals.propagations += gap_.propagations;
        metrics_.totals.oracle_calls += gap_.oracle_calls;
        metrics_.totals.wall_ns += gap_.wall_ns;
        metrics_.gaps.push_back(gap_);
        gap_ = GapRecord{};
    }

    const Csp& csp_;
    PropagationScope scope_;
    Oracle* oracle_;
    const SearchOrder& order_;
    const SolutionSink& sink_;
    const SearchLimits& limits_;
    const FailureObserver& on_failure_;

    std::vector<Domain> domains_;
    Trail trail_;
    PartialAssignment assigned_;
    std::vector<int> values_;
    DelayMetrics metrics_;
    GapRecord gap_;
    Clock::time_point gap_start_;
    bool stopped_ = false;
};

} // namespace

DelayMetrics enumerate_lex_family(const std::vector<LexLeq>& family,
                                  const std::vector<Domain>& domains,
                                  const SearchOrder& order,
                                  const SolutionSink& sink,
                                  const SearchLimits& limits,
                                  const FailureObserver& on_failure) {
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!is_in_lex_under_order(family[i], order.sequence)) {
            std::ostringstream os;
            os << "lex constraint " << i + 1
               << " is outside the accepted class under this order";
            throw std::invalid_argument(os.str());
        }
    }
    Csp shell;
    shell.num_vars = static_cast<int>(domains.size());
    shell.domains = domains;
    shell.lex_constraints = family;
    Engine engine(shell, PropagationScope::lex_only, nullptr, order, sink, limits,
                  on_failure);
    return engine.run();
}

DelayMetrics enumerate_all(const Csp& csp, const SearchOrder& order,
                           const SolutionSink& sink, const SearchLimits& limits,
                           const FailureObserver& on_failure) {
    Engine engine(csp, PropagationScope::all, nullptr, order, sink, limits,
                  on_failure);
    return engine.run();
}

DelayMetrics enumerate_with_symmetry(const Csp& csp,
                                     const std::vector<Permutation>& symmetries,
                                     Oracle& oracle, const SearchOrder& order,
                                     const SolutionSink& sink,
                                     const SearchLimits& limits,
                                     const FailureObserver& on_failure) {
    Csp working = csp;
    working.symmetries.clear();
    for (std::size_t i = 0; i < symmetries.size(); ++i) {
        if (!symmetries[i].is_involution()) {
            std::ostringstream os;
            os << "symmetry " << i + 1 << " is not an involution";
            throw std::invalid_argument(os.str());
        }
        LexLeq reduced = reduce_disjoint_transpositions(symmetries[i], order.sequence);
        if (reduced.size() > 0)
            working.lex_constraints.push_back(std::move(reduced));
    }
    for (std::size_t i = 0; i < csp.lex_constraints.size(); ++i) {
        if (!is_in_lex_under_order(csp.lex_constraints[i], order.sequence)) {
            std::ostringstream os;
            os << "lex constraint " << i + 1
               << " is outside the accepted class under this order";
            throw std::invalid_argument(os.str());
        }
    }
    Engine engine(working, PropagationScope::lex_only, &oracle, order, sink,
                  limits, on_failure);
    return engine.run();
}

GenerateAndTestResult enumerate_generate_and_test(
    const Csp& csp, const std::vector<Permutation>& symmetries,
    const BruteCaps& caps) {
    std::uint64_t space = 1;
    for (const Domain& d : csp.domains) {
        const std::uint64_t sz =
            static_cast<std::uint64_t>(d.initial_max() - d.initial_min() + 1);
        if (space > caps.max_assignments / std::max<std::uint64_t>(sz, 1))
            throw CapExceededError("assignment space exceeds the cap");
        space *= sz;
    }

    // Plain walk over the whole assignment space.
    std::vector<std::vector<int>> solutions;
    std::vector<int> values(static_cast<std::size_t>(csp.num_vars));
    auto rec = [&](auto&& self, int var) -> void {
        if (var == csp.num_vars) {
            for (const Constraint& c : csp.constraints)
                if (!constraint_allows(c, values))
                    return;
            for (const LexLeq& c : csp.lex_constraints)
                if (!lex_satisfied(c, values))
                    return;
            solutions.push_back(values);
            return;
        }
        const Domain& d = csp.domains[static_cast<std::size_t>(var)];
        for (int v = d.initial_min(); v <= d.initial_max(); ++v) {
            values[static_cast<std::size_t>(var)] = v;
            self(self, var + 1);
        }
    };
    if (csp.num_vars > 0)
        rec(rec, 0);

    GenerateAndTestResult out;
    out.total_solutions = solutions.size();
    for (const auto& orbit : orbits_of_solutions(solutions, symmetries)) {
        const std::vector<int>* least = nullptr;
        for (std::size_t idx : orbit)
            if (!least || solutions[idx] < *least)
                least = &solutions[idx];
        out.canonical.push_back(*least);
    }
    std::sort(out.canonical.begin(), out.canonical.end());
    return out;
}

} // namespace lexenum
