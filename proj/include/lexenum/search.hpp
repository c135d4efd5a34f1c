#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lexenum/model.hpp"
#include "lexenum/oracle.hpp"

namespace lexenum {

// Variable order used both for the search and for reading constraints:
// sequence[p] is the variable assigned at position p.
struct SearchOrder {
    std::vector<int> sequence;

    static SearchOrder identity(int n);
    bool valid(int num_vars) const;
    // positions()[v] is the position of variable v.
    std::vector<int> positions() const;

    bool operator==(const SearchOrder&) const = default;
};

// Work done between two consecutive emissions (or before the first one /
// after the last one).
//   nodes:           tentative assignments tried
//   values_rejected: values removed at a node after their branch concluded,
//                    whatever the reason (rejection, exhausted subtree, or
//                    an emitted solution)
//   propagations:    single-constraint propagation passes
//   oracle_calls:    extension oracle invocations
struct GapRecord {
    std::uint64_t nodes = 0;
    std::uint64_t values_rejected = 0;
    std::uint64_t propagations = 0;
    std::uint64_t oracle_calls = 0;
    std::uint64_t wall_ns = 0;
};

enum class Termination { complete, node_budget_exhausted, oracle_budget_exhausted };

// Per-gap records plus run totals. A run with s solutions always carries
// s + 1 gap records: the records partition the run from start to
// termination. failed_nodes counts tentative assignments rejected right away
// by a propagation conflict or an oracle no.
struct DelayMetrics {
    std::vector<GapRecord> gaps;
    GapRecord totals;
    std::uint64_t failed_nodes = 0;
    std::uint64_t solutions = 0;
    Termination termination = Termination::complete;
};

struct SearchLimits {
    std::uint64_t node_budget = 50'000'000;
    std::uint64_t oracle_call_budget = 50'000'000;
};

// Called once per emitted solution with values indexed by variable.
using SolutionSink = std::function<void(const std::vector<int>&)>;
// Called on every immediately rejected tentative assignment, tentative
// literal included.
using FailureObserver = std::function<void(const PartialAssignment&)>;

// Enumerate every solution of a family of lex constraints over fresh
// interval domains, in ascending lexicographic order of the search order.
// Chronological backtracking, smallest value first, propagation to a
// fixpoint after every assignment. Throws std::invalid_argument unless every
// constraint passes is_in_lex_under_order for `order`; on such families the
// search never hits a failed node.
DelayMetrics enumerate_lex_family(const std::vector<LexLeq>& family,
                                  const std::vector<Domain>& domains,
                                  const SearchOrder& order,
                                  const SolutionSink& sink,
                                  const SearchLimits& limits = {},
                                  const FailureObserver& on_failure = {});

// Complete search over all constraints of the instance, problem and lex
// alike, with full propagation at every node. Used for instances the
// restricted engines do not accept.
DelayMetrics enumerate_all(const Csp& csp, const SearchOrder& order,
                           const SolutionSink& sink,
                           const SearchLimits& limits = {},
                           const FailureObserver& on_failure = {});

// Symmetry-pruned enumeration: builds one reduced lexleader per involution
// in `symmetries` (under `order`), propagates that family after every
// tentative assignment, and consults the oracle for extendability in the
// problem constraints. Emits exactly the solutions of the instance that
// also satisfy every constructed lexleader, in ascending lexicographic
// order. Explicit lex constraints of the instance join the propagated
// family and must pass is_in_lex_under_order as well.
// Throws std::invalid_argument on non-involution symmetries or out-of-class
// lex constraints.
DelayMetrics enumerate_with_symmetry(const Csp& csp,
                                     const std::vector<Permutation>& symmetries,
                                     Oracle& oracle, const SearchOrder& order,
                                     const SolutionSink& sink,
                                     const SearchLimits& limits = {},
                                     const FailureObserver& on_failure = {});

struct BruteCaps {
    std::uint64_t max_assignments = 20'000'000;
};

// Baseline for comparisons: enumerate every solution of the instance by
// walking the whole assignment space, then keep the lexicographically least
// solution of each orbit under the group generated by `symmetries`.
// Throws CapExceededError when the assignment space exceeds the cap.
struct GenerateAndTestResult {
    std::vector<std::vector<int>> canonical; // sorted ascending
    std::uint64_t total_solutions = 0;
};

GenerateAndTestResult enumerate_generate_and_test(
    const Csp& csp, const std::vector<Permutation>& symmetries,
    const BruteCaps& caps = {});

} // namespace lexenum
