// Acceptance gate. Each numbered check prints exactly one PASS/FAIL line;
// the process exits 0 only when every check passes. All randomness is
// seeded, so reruns are bit-identical.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute.hpp"
#include "gen.hpp"
#include "lexenum/lex.hpp"
#include "lexenum/oracle.hpp"
#include "lexenum/search.hpp"
#include "lexenum/symmetry.hpp"

using namespace lexenum;

namespace {

int failures = 0;

void report(int index, const std::string& title, bool ok,
            const std::string& detail) {
    std::cout << "criterion " << index << " [" << title << "]: "
              << (ok ? "PASS" : "FAIL");
    if (!detail.empty())
        std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

Csp clique_csp(int n, int lo, int hi) {
    Csp csp;
    csp.num_vars = n;
    csp.domains.assign(static_cast<std::size_t>(n), Domain(lo, hi));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            csp.constraints.emplace_back(BinaryNeq{a, b});
    return csp;
}

std::vector<Permutation> adjacent_swaps(int n) {
    std::vector<Permutation> out;
    for (int i = 0; i + 1 < n; ++i)
        out.push_back(Permutation::transposition(n, i, i + 1));
    return out;
}

Csp family_shell(const gen::LexFamilyCase& fam) {
    Csp csp;
    csp.num_vars = fam.n;
    csp.domains = fam.domains();
    csp.lex_constraints = fam.family;
    return csp;
}

int max_domain_size(const Csp& csp) {
    int d = 0;
    for (const Domain& dom : csp.domains)
        d = std::max(d, dom.initial_max() - dom.initial_min() + 1);
    return d;
}

// Runs kept for the delay-bound check, paired with the bound their gaps
// must respect.
struct BoundedRun {
    DelayMetrics metrics;
    std::uint64_t bound;
};
std::vector<BoundedRun> node_gap_runs;
std::vector<BoundedRun> oracle_gap_runs;

void check_clique_counts() {
    const std::uint64_t factorial[] = {24, 720, 40320};
    bool ok = true;
    double worst_s = 0.0;
    std::ostringstream detail;
    int idx = 0;
    for (int n : {4, 6, 8}) {
        const Csp csp = clique_csp(n, 1, n);
        AlldiffOracle oracle(csp);
        const std::uint64_t oracle_bound =
            static_cast<std::uint64_t>(n) * (static_cast<std::uint64_t>(n) + 1);

        std::uint64_t pruned = 0;
        std::vector<int> only;
        auto t0 = std::chrono::steady_clock::now();
        const DelayMetrics m1 = enumerate_with_symmetry(
            csp, adjacent_swaps(n), oracle, SearchOrder::identity(n),
            [&](const std::vector<int>& v) {
                ++pruned;
                only = v;
            });
        const double s1 = seconds_since(t0);

        std::uint64_t all = 0;
        t0 = std::chrono::steady_clock::now();
        const DelayMetrics m2 = enumerate_with_symmetry(
            csp, {}, oracle, SearchOrder::identity(n),
            [&](const std::vector<int>&) { ++all; });
        const double s2 = seconds_since(t0);

        std::vector<int> sorted(static_cast<std::size_t>(n));
        std::iota(sorted.begin(), sorted.end(), 1);
        ok = ok && pruned == 1 && only == sorted &&
             all == factorial[idx] && s1 < 10.0 && s2 < 10.0;
        worst_s = std::max({worst_s, s1, s2});
        oracle_gap_runs.push_back({m1, oracle_bound});
        oracle_gap_runs.push_back({m2, oracle_bound});

        if (idx > 0)
            detail << ", ";
        detail << "n=" << n << ": " << pruned << "/" << all;
        ++idx;
    }
    detail << " solutions, slowest run " << worst_s << " s";
    report(1, "clique pruning counts", ok, detail.str());
}

void check_order_sensitivity() {
    const std::vector<LexLeq> family{LexLeq{{0, 4}, {1, 5}},
                                     LexLeq{{0, 1, 2}, {4, 5, 3}}};
    const std::vector<Domain> domains(6, Domain(0, 1));
    Csp shell;
    shell.num_vars = 6;
    shell.domains = domains;
    shell.lex_constraints = family;
    const auto expect = brute::solutions(shell);

    std::vector<std::vector<int>> got;
    const DelayMetrics matched = enumerate_lex_family(
        family, domains, SearchOrder::identity(6),
        [&](const std::vector<int>& v) { got.push_back(v); });
    const bool ok_matched = matched.failed_nodes == 0 && got == expect;

    std::vector<std::vector<std::pair<int, int>>> failed_at;
    std::vector<std::vector<int>> swapped_got;
    const DelayMetrics swapped = enumerate_all(
        shell, SearchOrder{{0, 1, 2, 3, 5, 4}},
        [&](const std::vector<int>& v) { swapped_got.push_back(v); }, {},
        [&](const PartialAssignment& pa) { failed_at.push_back(pa.literals()); });
    const std::vector<std::pair<int, int>> stated{
        {0, 0}, {1, 0}, {2, 1}, {3, 0}, {5, 0}};
    std::sort(swapped_got.begin(), swapped_got.end());
    const bool ok_swapped =
        swapped.failed_nodes >= 1 &&
        std::count(failed_at.begin(), failed_at.end(), stated) == 1 &&
        swapped_got == expect;

    std::ostringstream detail;
    detail << "matched order: " << got.size() << " solutions, "
           << matched.failed_nodes << " failed nodes; swapped order: "
           << swapped.failed_nodes << " failed nodes, stated failure "
           << (std::count(failed_at.begin(), failed_at.end(), stated) == 1
                   ? "reproduced"
                   : "missing");
    report(2, "order sensitivity on the six-variable pair family",
           ok_matched && ok_swapped, detail.str());
}

void check_failure_free() {
    std::mt19937 rng(9001);
    int bad = 0;
    std::uint64_t total_solutions = 0;
    for (int round = 0; round < 200; ++round) {
        const gen::LexFamilyCase fam = gen::random_lex_family(rng, 8, 4, 6);
        std::uint64_t count = 0;
        const DelayMetrics m = enumerate_lex_family(
            fam.family, fam.domains(), SearchOrder::identity(fam.n),
            [&](const std::vector<int>&) { ++count; });
        const Csp shell = family_shell(fam);
        std::uint64_t expect = 0;
        brute::walk_values(brute::current_values(fam.domains()),
                           [&](const std::vector<int>& v) {
                               if (brute::satisfies_all(shell, v))
                                   ++expect;
                               return true;
                           });
        if (m.failed_nodes != 0 || count != expect)
            ++bad;
        total_solutions += count;
        node_gap_runs.push_back(
            {m, 2u * static_cast<std::uint64_t>(fam.n) + 1});
    }
    std::ostringstream detail;
    detail << "200 random in-class families, " << total_solutions
           << " solutions, " << bad << " runs with failures or count drift";
    report(3, "failure-free enumeration", bad == 0, detail.str());
}

void check_delay_bounds() {
    bool ok = true;
    std::uint64_t worst_nodes = 0, node_bound_at_worst = 0;
    for (const BoundedRun& r : node_gap_runs)
        for (const GapRecord& g : r.metrics.gaps) {
            if (g.nodes > worst_nodes) {
                worst_nodes = g.nodes;
                node_bound_at_worst = r.bound;
            }
            ok = ok && g.nodes <= r.bound;
        }

    std::mt19937 rng(9100);
    for (int round = 0; round < 100; ++round) {
        const Csp csp = gen::random_symmetric_instance(rng, 6, 3);
        ExactOracle oracle;
        const DelayMetrics m = enumerate_with_symmetry(
            csp, csp.symmetries, oracle, SearchOrder::identity(csp.num_vars),
            [](const std::vector<int>&) {});
        const std::uint64_t bound =
            static_cast<std::uint64_t>(csp.num_vars) *
            (static_cast<std::uint64_t>(max_domain_size(csp)) + 1);
        oracle_gap_runs.push_back({m, bound});
    }

    std::uint64_t worst_calls = 0, call_bound_at_worst = 0;
    for (const BoundedRun& r : oracle_gap_runs)
        for (const GapRecord& g : r.metrics.gaps) {
            if (g.oracle_calls > worst_calls) {
                worst_calls = g.oracle_calls;
                call_bound_at_worst = r.bound;
            }
            ok = ok && g.oracle_calls <= r.bound;
        }

    std::ostringstream detail;
    detail << "max nodes per gap " << worst_nodes << " within bound "
           << node_bound_at_worst << "; max oracle calls per gap "
           << worst_calls << " within bound " << call_bound_at_worst;
    report(4, "per-gap delay bounds", ok, detail.str());
}

void check_lower_bound_only() {
    std::mt19937 rng(9200);
    int bad = 0;
    for (int round = 0; round < 500; ++round) {
        const gen::LexFamilyCase fam = gen::random_lex_family(rng, 8, 4, 6);
        const Csp shell = family_shell(fam);
        std::vector<Domain> domains = fam.domains();
        Trail trail;
        bool good = propagate_fixpoint(shell, domains, trail,
                                       PropagationScope::lex_only) ==
                    FixpointResult::fixpoint;
        const int prefix = std::uniform_int_distribution<int>(0, fam.n)(rng);
        for (int x = 0; good && x < prefix; ++x) {
            const auto vals = domains[static_cast<std::size_t>(x)].values();
            const int v = vals[std::uniform_int_distribution<std::size_t>(
                0, vals.size() - 1)(rng)];
            good = assign_value(domains, trail, x, v) &&
                   propagate_fixpoint(shell, domains, trail,
                                      PropagationScope::lex_only) ==
                       FixpointResult::fixpoint;
        }
        for (int x = prefix; good && x < fam.n; ++x) {
            const Domain& d = domains[static_cast<std::size_t>(x)];
            good = !d.empty() && d.max() == fam.hi &&
                   d.size() == d.max() - d.min() + 1;
        }
        if (!good)
            ++bad;
    }
    std::ostringstream detail;
    detail << "500 random consistent prefixes, " << bad
           << " domains not an upper interval with max retained";
    report(5, "propagation only raises lower bounds", bad == 0, detail.str());
}

bool propagator_matches_reference(const LexLeq& c,
                                  const std::vector<Domain>& start) {
    const auto expect = brute::gac_filter_lex(c, start);
    std::vector<Domain> domains = start;
    Trail trail;
    const PropagateResult r = propagate_lex_gac(c, domains, trail);
    if (expect.empty())
        return r == PropagateResult::conflict;
    if (r == PropagateResult::conflict)
        return false;
    for (std::size_t x = 0; x < domains.size(); ++x)
        if (domains[x].values() != expect[x])
            return false;
    return true;
}

void check_propagator_differential() {
    const int n = 6;
    const std::vector<Domain> full(n, Domain(0, 2));
    std::uint64_t cases = 0;
    std::uint64_t bad = 0;

    for (int k = 0; k <= 3; ++k) {
        std::vector<int> digits(static_cast<std::size_t>(2 * k), 0);
        while (true) {
            LexLeq c;
            c.lhs.assign(digits.begin(), digits.begin() + k);
            c.rhs.assign(digits.begin() + k, digits.end());
            ++cases;
            if (!propagator_matches_reference(c, full))
                ++bad;
            int i = static_cast<int>(digits.size()) - 1;
            while (i >= 0 && digits[static_cast<std::size_t>(i)] == n - 1) {
                digits[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0)
                break;
            ++digits[static_cast<std::size_t>(i)];
        }
    }
    const std::uint64_t exhaustive = cases;

    std::mt19937 rng(9250);
    for (int round = 0; round < 10000; ++round) {
        const int vars = std::uniform_int_distribution<int>(1, 6)(rng);
        const int k = std::uniform_int_distribution<int>(0, 3)(rng);
        LexLeq c;
        for (int j = 0; j < k; ++j) {
            c.lhs.push_back(
                std::uniform_int_distribution<int>(0, vars - 1)(rng));
            c.rhs.push_back(
                std::uniform_int_distribution<int>(0, vars - 1)(rng));
        }
        std::vector<Domain> domains(static_cast<std::size_t>(vars),
                                    Domain(0, 2));
        for (Domain& d : domains) {
            const unsigned mask =
                std::uniform_int_distribution<unsigned>(1, 7)(rng);
            for (int v = 0; v <= 2; ++v)
                if (!(mask >> v & 1u))
                    d.remove(v);
        }
        ++cases;
        if (!propagator_matches_reference(c, domains))
            ++bad;
    }

    std::ostringstream detail;
    detail << exhaustive << " exhaustive shapes at full domains plus 10000 "
           << "sampled subset states, " << bad << " mismatches";
    report(6, "filtering equals support enumeration", bad == 0, detail.str());
}

void check_orbit_coverage() {
    std::mt19937 rng(9300);
    bool covered = true;
    std::size_t orbit_total = 0;
    for (int round = 0; round < 100; ++round) {
        const Csp csp = gen::random_symmetric_instance(rng, 5, 3);
        ExactOracle oracle;
        std::set<std::vector<int>> emitted;
        enumerate_with_symmetry(csp, csp.symmetries, oracle,
                                SearchOrder::identity(csp.num_vars),
                                [&](const std::vector<int>& v) {
                                    emitted.insert(v);
                                });
        const auto orbits =
            brute::orbit_partition(brute::solutions(csp), csp.symmetries);
        orbit_total += orbits.size();
        for (const auto& orbit : orbits) {
            const bool hit =
                std::any_of(orbit.begin(), orbit.end(),
                            [&](const std::vector<int>& s) {
                                return emitted.count(s) == 1;
                            });
            covered = covered && hit;
        }
    }

    bool exact = true;
    std::size_t exact_orbits = 0;
    for (int round = 0; round < 60; ++round) {
        const Csp csp = gen::random_symmetric_instance(rng, 4, 3);
        const std::vector<Permutation> group =
            generate_group(csp.symmetries, 24);
        Csp with_lex = csp;
        for (const Permutation& g : group)
            if (!g.is_identity())
                with_lex.lex_constraints.push_back(
                    lexleader_from_perm(g).as_lexleq());
        std::set<std::vector<int>> emitted;
        enumerate_all(with_lex, SearchOrder::identity(csp.num_vars),
                      [&](const std::vector<int>& v) { emitted.insert(v); });
        const auto orbits =
            brute::orbit_partition(brute::solutions(csp), csp.symmetries);
        exact_orbits += orbits.size();
        for (const auto& orbit : orbits) {
            const long hits =
                std::count_if(orbit.begin(), orbit.end(),
                              [&](const std::vector<int>& s) {
                                  return emitted.count(s) == 1;
                              });
            exact = exact && hits == 1;
        }
    }

    std::ostringstream detail;
    detail << "100 instances / " << orbit_total
           << " orbits all represented; 60 full-group instances / "
           << exact_orbits << " orbits hit exactly once";
    report(7, "orbit coverage", covered && exact, detail.str());
}

void check_oracle_agreement() {
    std::uint64_t queries = 0;
    std::uint64_t bad = 0;
    const PartialAssignment none;

    for (int n = 1; n <= 5; ++n) {
        const Csp csp = clique_csp(n, 1, n);
        AlldiffOracle fast(csp);
        ExactOracle slow;
        const unsigned full = (1u << n) - 1;
        std::vector<unsigned> mask(static_cast<std::size_t>(n), 1);
        while (true) {
            std::vector<Domain> domains = csp.domains;
            for (int x = 0; x < n; ++x)
                for (int v = 1; v <= n; ++v)
                    if (!(mask[static_cast<std::size_t>(x)] >> (v - 1) & 1u))
                        domains[static_cast<std::size_t>(x)].remove(v);
            ++queries;
            if (fast.extends({csp, domains, none}) !=
                slow.extends({csp, domains, none}))
                ++bad;
            int i = n - 1;
            while (i >= 0 && mask[static_cast<std::size_t>(i)] == full) {
                mask[static_cast<std::size_t>(i)] = 1;
                --i;
            }
            if (i < 0)
                break;
            ++mask[static_cast<std::size_t>(i)];
        }
    }
    const std::uint64_t exhaustive = queries;

    std::mt19937 rng(9400);
    for (int round = 0; round < 10000; ++round) {
        const int n = std::uniform_int_distribution<int>(1, 8)(rng);
        const Csp csp = clique_csp(n, 1, n);
        AlldiffOracle fast(csp);
        ExactOracle slow;
        std::vector<Domain> domains = csp.domains;
        for (int x = 0; x < n; ++x) {
            const unsigned mask = std::uniform_int_distribution<unsigned>(
                1, (1u << n) - 1)(rng);
            for (int v = 1; v <= n; ++v)
                if (!(mask >> (v - 1) & 1u))
                    domains[static_cast<std::size_t>(x)].remove(v);
        }
        ++queries;
        if (fast.extends({csp, domains, none}) !=
            slow.extends({csp, domains, none}))
            ++bad;
    }

    std::ostringstream detail;
    detail << exhaustive << " exhaustive plus 10000 randomized queries, "
           << bad << " disagreements";
    report(8, "matching oracle equals exhaustive oracle", bad == 0,
           detail.str());
}

void check_reduction_equivalence() {
    std::uint64_t checked = 0;
    std::uint64_t bad = 0;
    for (int n = 1; n <= 5; ++n) {
        std::vector<int> image(static_cast<std::size_t>(n));
        std::iota(image.begin(), image.end(), 0);
        do {
            const Permutation sigma(image);
            if (!sigma.is_involution())
                continue;
            ++checked;
            Csp reduced;
            reduced.num_vars = n;
            reduced.domains.assign(static_cast<std::size_t>(n), Domain(0, 2));
            Csp complete = reduced;
            reduced.lex_constraints.push_back(
                reduce_disjoint_transpositions(sigma));
            complete.lex_constraints.push_back(
                lexleader_from_perm(sigma).as_lexleq());
            if (brute::solutions(reduced) != brute::solutions(complete))
                ++bad;
        } while (std::next_permutation(image.begin(), image.end()));
    }
    std::ostringstream detail;
    detail << checked << " involutions over three-value domains, " << bad
           << " solution-set differences";
    report(9, "reduced pairs equal full ordering constraints", bad == 0,
           detail.str());
}

} // namespace

int main() {
    check_clique_counts();
    check_order_sensitivity();
    check_failure_free();
    check_delay_bounds();
    check_lower_bound_only();
    check_propagator_differential();
    check_orbit_coverage();
    check_oracle_agreement();
    check_reduction_equivalence();
    if (failures == 0) {
        std::cout << "all criteria passed" << std::endl;
        return 0;
    }
    std::cout << failures << " criteria failed" << std::endl;
    return 1;
}
