#include "lexenum/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace lexenum {

namespace {

enum class SearchOutcome { found, exhausted, out_of_budget };

// Propagation runs with scope problem_only, so the instance's lex
// constraints never influence the answer.
SearchOutcome exact_search(const Csp& csp, std::vector<Domain>& domains,
                           Trail& trail, std::uint64_t& nodes_left) {
    if (propagate_fixpoint(csp, domains, trail, PropagationScope::problem_only) ==
        FixpointResult::conflict)
        return SearchOutcome::exhausted;

    // Smallest live domain first.
    int var = -1;
    int best = 0;
    for (int x = 0; x < csp.num_vars; ++x) {
        const int sz = domains[static_cast<std::size_t>(x)].size();
        if (sz > 1 && (var < 0 || sz < best)) {
            var = x;
            best = sz;
        }
    }
    if (var < 0)
        return SearchOutcome::found; // every domain is a singleton

    for (int v : domains[static_cast<std::size_t>(var)].values()) {
        if (nodes_left == 0)
            return SearchOutcome::out_of_budget;
        --nodes_left;
        const Trail::Marker m = trail.mark();
        assign_value(domains, trail, var, v);
        const SearchOutcome r = exact_search(csp, domains, trail, nodes_left);
        trail.undo_to(m, domains);
        if (r != SearchOutcome::exhausted)
            return r;
    }
    return SearchOutcome::exhausted;
}

} // namespace

OracleAnswer ExactOracle::extends(const OracleQuery& q) {
    for (const Domain& d : q.domains)
        if (d.empty())
            return OracleAnswer::not_extendable;
    std::vector<Domain> domains = q.domains;
    Trail trail;
    std::uint64_t nodes_left = node_budget_;
    switch (exact_search(q.csp, domains, trail, nodes_left)) {
    case SearchOutcome::found:
        return OracleAnswer::extendable;
    case SearchOutcome::exhausted:
        return OracleAnswer::not_extendable;
    default:
        return OracleAnswer::budget_exhausted;
    }
}

AlldiffOracle::AlldiffOracle(const Csp& csp) {
    std::set<std::pair<int, int>> pairs;
    std::set<int> vars;
    for (const Constraint& c : csp.constraints) {
        if (const auto* neq = std::get_if<BinaryNeq>(&c)) {
            const int a = std::min(neq->a, neq->b);
            const int b = std::max(neq->a, neq->b);
            if (a == b)
                throw std::invalid_argument(
                    "difference constraint joins a variable with itself");
            pairs.emplace(a, b);
            vars.insert(a);
            vars.insert(b);
        } else if (const auto* un = std::get_if<UnaryIn>(&c)) {
            unary_.push_back(*un);
        } else {
            throw std::invalid_argument(
                "instance has a table constraint; the matching oracle needs a "
                "pure pairwise-difference clique");
        }
    }
    clique_.assign(vars.begin(), vars.end());
    const std::size_t expect = clique_.size() * (clique_.size() - 1) / 2;
    if (!clique_.empty() && pairs.size() != expect)
        throw std::invalid_argument(
            "difference constraints do not form a complete clique");
}

OracleAnswer AlldiffOracle::extends(const OracleQuery& q) {
    // Effective domain: current values restricted by any unary constraints.
    auto allowed = [&](int var, int v) {
        for (const UnaryIn& un : unary_)
            if (un.var == var &&
                !std::binary_search(un.values.begin(), un.values.end(), v))
                return false;
        return true;
    };

    for (int x = 0; x < q.csp.num_vars; ++x) {
        if (std::find(clique_.begin(), clique_.end(), x) != clique_.end())
            continue;
        bool nonempty = false;
        for (int v : q.domains[static_cast<std::size_t>(x)].values())
            if (allowed(x, v)) {
                nonempty = true;
                break;
            }
        if (!nonempty)
            return OracleAnswer::not_extendable;
    }

    // Augmenting-path matching between clique variables and values.
    std::map<int, int> value_owner; // value -> clique position

    auto augment = [&](auto&& self, std::size_t pos, std::set<int>& visited) -> bool {
        const int var = clique_[pos];
        for (int v : q.domains[static_cast<std::size_t>(var)].values()) {
            if (!allowed(var, v) || visited.count(v))
                continue;
            visited.insert(v);
            auto it = value_owner.find(v);
            if (it == value_owner.end() ||
                self(self, static_cast<std::size_t>(it->second), visited)) {
                value_owner[v] = static_cast<int>(pos);
                return true;
            }
        }
        return false;
    };

    for (std::size_t pos = 0; pos < clique_.size(); ++pos) {
        std::set<int> visited;
        if (!augment(augment, pos, visited))
            return OracleAnswer::not_extendable;
    }
    return OracleAnswer::extendable;
}

} // namespace lexenum
