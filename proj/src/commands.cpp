#include "lexenum/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>

#include "lexenum/instance.hpp"
#include "lexenum/lex.hpp"
#include "lexenum/oracle.hpp"

namespace lexenum {

namespace {

struct Loaded {
    Csp csp;
    SearchOrder order;
};

Loaded load(const CommandOptions& opt) {
    Loaded l;
    l.csp = parse_instance_file(opt.instance_path);
    if (opt.order) {
        std::vector<int> seq;
        seq.reserve(opt.order->size());
        for (int v : *opt.order)
            seq.push_back(v - 1);
        l.order.sequence = std::move(seq);
        if (!l.order.valid(l.csp.num_vars))
            throw std::invalid_argument(
                "--order is not a permutation of the variables");
    } else if (l.csp.declared_order) {
        l.order.sequence = *l.csp.declared_order;
    } else {
        l.order = SearchOrder::identity(l.csp.num_vars);
    }
    return l;
}

std::unique_ptr<Oracle> make_oracle(const CommandOptions& opt, const Csp& csp) {
    if (opt.oracle == "exact")
        return std::make_unique<ExactOracle>(opt.oracle_node_budget);
    if (opt.oracle == "alldiff")
        return std::make_unique<AlldiffOracle>(csp);
    throw std::invalid_argument("unknown oracle '" + opt.oracle + "'");
}

// Solutions print as the value of each variable in search-order sequence.
SolutionSink print_sink(const SearchOrder& order, std::ostream& out) {
    return [&order, &out](const std::vector<int>& values) {
        for (std::size_t p = 0; p < order.sequence.size(); ++p) {
            if (p > 0)
                out << ' ';
            out << values[static_cast<std::size_t>(order.sequence[p])];
        }
        out << '\n';
    };
}

void print_lex_line(std::ostream& out, const LexLeq& c) {
    out << "lex " << c.size();
    for (int v : c.lhs)
        out << ' ' << v + 1;
    out << " <=";
    for (int v : c.rhs)
        out << ' ' << v + 1;
    out << '\n';
}

bool flush_metrics(const CommandOptions& opt, const DelayMetrics& m,
                   std::ostream& err) {
    if (opt.metrics_path.empty())
        return true;
    std::ofstream f(opt.metrics_path);
    if (!f) {
        err << "error: cannot write '" << opt.metrics_path << "'\n";
        return false;
    }
    write_metrics_csv(f, m);
    return true;
}

// 0 when the run completed, 1 with a note when a budget cut it short.
int finish_run(const DelayMetrics& m, std::ostream& err) {
    switch (m.termination) {
    case Termination::complete:
        return kExitOk;
    case Termination::node_budget_exhausted:
        err << "note: node budget exhausted; enumeration incomplete\n";
        return kExitAborted;
    default:
        err << "note: oracle call budget exhausted; enumeration incomplete\n";
        return kExitAborted;
    }
}

template <typename Body>
int guarded(const CommandOptions& opt, std::ostream& err, Body body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << opt.instance_path;
        if (e.line > 0)
            err << ": line " << e.line;
        err << ": " << e.what() << "\n";
        return kExitInput;
    } catch (const CapExceededError& e) {
        err << "error: " << e.what() << "\n";
        return kExitAborted;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

} // namespace

void write_metrics_csv(std::ostream& out, const DelayMetrics& metrics) {
    out << "gap_index,nodes,values_rejected,propagations,oracle_calls,wall_ns\n";
    for (std::size_t i = 0; i < metrics.gaps.size(); ++i) {
        const GapRecord& g = metrics.gaps[i];
        out << i + 1 << ',' << g.nodes << ',' << g.values_rejected << ','
            << g.propagations << ',' << g.oracle_calls << ',' << g.wall_ns
            << '\n';
    }
}

int cmd_enumerate(const CommandOptions& opt, std::ostream& out,
                  std::ostream& err) {
    return guarded(opt, err, [&] {
        const Loaded l = load(opt);
        const DelayMetrics m =
            enumerate_all(l.csp, l.order, print_sink(l.order, out), opt.limits);
        if (!flush_metrics(opt, m, err))
            return kExitInput;
        return finish_run(m, err);
    });
}

int cmd_enumerate_sym(const CommandOptions& opt, std::ostream& out,
                      std::ostream& err) {
    return guarded(opt, err, [&] {
        const Loaded l = load(opt);
        for (std::size_t i = 0; i < l.csp.symmetries.size(); ++i) {
            if (!l.csp.symmetries[i].is_involution()) {
                err << "error: symmetry " << i + 1 << ": not an involution\n";
                return kExitInput;
            }
        }
        bool cap_warned = false;
        for (std::size_t i = 0; i < l.csp.symmetries.size() && !cap_warned; ++i) {
            try {
                if (!verify_variable_symmetry(l.csp, l.csp.symmetries[i],
                                              opt.msc_caps)) {
                    err << "error: symmetry " << i + 1
                        << ": not a variable symmetry of the instance\n";
                    return kExitInput;
                }
            } catch (const CapExceededError&) {
                err << "warning: instance above the verification cap; "
                       "symmetry checks skipped\n";
                cap_warned = true;
            }
        }
        const std::unique_ptr<Oracle> oracle = make_oracle(opt, l.csp);
        const DelayMetrics m =
            enumerate_with_symmetry(l.csp, l.csp.symmetries, *oracle, l.order,
                                    print_sink(l.order, out), opt.limits);
        if (!flush_metrics(opt, m, err))
            return kExitInput;
        return finish_run(m, err);
    });
}

int cmd_reduce(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(opt, err, [&] {
        const Loaded l = load(opt);
        for (std::size_t i = 0; i < l.csp.symmetries.size(); ++i) {
            if (!l.csp.symmetries[i].is_involution()) {
                err << "error: symmetry " << i + 1 << ": not an involution\n";
                return kExitInput;
            }
        }
        for (const Permutation& s : l.csp.symmetries)
            print_lex_line(out,
                           reduce_disjoint_transpositions(s, l.order.sequence));
        return kExitOk;
    });
}

int cmd_orbits(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(opt, err, [&] {
        const Loaded l = load(opt);
        std::vector<std::vector<int>> solutions;
        const DelayMetrics m = enumerate_all(
            l.csp, l.order,
            [&](const std::vector<int>& v) { solutions.push_back(v); },
            opt.limits);
        if (m.termination != Termination::complete)
            return finish_run(m, err);
        const auto orbits = orbits_of_solutions(solutions, l.csp.symmetries);
        std::vector<std::size_t> sizes;
        sizes.reserve(orbits.size());
        for (const auto& o : orbits)
            sizes.push_back(o.size());
        std::sort(sizes.rbegin(), sizes.rend());
        if (sizes.empty()) {
            out << "0 orbits\n";
        } else if (sizes.size() == 1) {
            out << "1 orbit: size " << sizes[0] << '\n';
        } else {
            out << sizes.size() << " orbits: sizes";
            for (std::size_t s : sizes)
                out << ' ' << s;
            out << '\n';
        }
        return kExitOk;
    });
}

int cmd_bench(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(opt, err, [&] {
        const Loaded l = load(opt);
        const std::unique_ptr<Oracle> oracle = make_oracle(opt, l.csp);
        std::uint64_t emitted = 0;
        const DelayMetrics m = enumerate_with_symmetry(
            l.csp, l.csp.symmetries, *oracle, l.order,
            [&](const std::vector<int>&) { ++emitted; }, opt.limits);

        const auto t0 = std::chrono::steady_clock::now();
        const GenerateAndTestResult gt =
            enumerate_generate_and_test(l.csp, l.csp.symmetries, opt.brute_caps);
        const auto t1 = std::chrono::steady_clock::now();
        const double gt_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();

        std::uint64_t max_nodes = 0;
        std::uint64_t max_calls = 0;
        for (const GapRecord& g : m.gaps) {
            max_nodes = std::max(max_nodes, g.nodes);
            max_calls = std::max(max_calls, g.oracle_calls);
        }
        out << std::fixed << std::setprecision(3);
        out << "symmetry-pruned search: " << emitted
            << " solutions, max nodes per gap " << max_nodes
            << ", max oracle calls per gap " << max_calls << ", "
            << static_cast<double>(m.totals.wall_ns) / 1e6 << " ms\n";
        out << "generate-and-test: " << gt.canonical.size()
            << " canonical solutions out of " << gt.total_solutions << ", "
            << gt_ms << " ms\n";
        return finish_run(m, err);
    });
}

int cmd_check(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(opt, err, [&] {
        const Loaded l = load(opt);
        bool all_ok = true;
        out << "order:";
        for (int v : l.order.sequence)
            out << ' ' << v + 1;
        out << '\n';
        for (std::size_t i = 0; i < l.csp.lex_constraints.size(); ++i) {
            const bool in =
                is_in_lex_under_order(l.csp.lex_constraints[i], l.order.sequence);
            out << "lex " << i + 1 << ": " << (in ? "in LEX" : "NOT in LEX")
                << '\n';
            all_ok = all_ok && in;
        }
        for (std::size_t i = 0; i < l.csp.symmetries.size(); ++i) {
            const Permutation& s = l.csp.symmetries[i];
            out << "sym " << i + 1 << ": ";
            if (!s.is_involution()) {
                out << "NOT an involution\n";
                all_ok = false;
                continue;
            }
            out << "involution";
            try {
                if (verify_variable_symmetry(l.csp, s, opt.msc_caps)) {
                    out << "; variable symmetry verified\n";
                } else {
                    out << "; NOT a variable symmetry\n";
                    all_ok = false;
                }
            } catch (const CapExceededError&) {
                out << "; verification skipped (cap exceeded)\n";
            } catch (const std::invalid_argument& e) {
                out << "; NOT a variable symmetry (" << e.what() << ")\n";
                all_ok = false;
            }
        }
        return all_ok ? kExitOk : kExitAborted;
    });
}

} // namespace lexenum
