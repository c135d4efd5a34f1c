#pragma once

#include <vector>

#include "lexenum/perm.hpp"

namespace lexenum {

// Constraint [x_{lhs[0]}, .., x_{lhs[k-1]}] <=_lex [x_{rhs[0]}, .., x_{rhs[k-1]}]
// over variable indices 0..n-1. Both sides always have the same length; k may
// be zero, in which case the constraint is trivially satisfied.
struct LexLeq {
    std::vector<int> lhs;
    std::vector<int> rhs;

    int size() const { return static_cast<int>(lhs.size()); }
    bool operator==(const LexLeq&) const = default;
};

// Full-length ordering constraint for a permutation sigma:
// [x_0, .., x_{n-1}] <=_lex [x_{sigma(0)}, .., x_{sigma(n-1)}].
struct GeneralLexLeader {
    std::vector<int> lhs; // 0, 1, .., n-1
    std::vector<int> rhs; // sigma(0), .., sigma(n-1)

    LexLeq as_lexleq() const { return LexLeq{lhs, rhs}; }
    bool operator==(const GeneralLexLeader&) const = default;
};

// Membership in the restricted constraint class the failure-free enumerator
// accepts: lhs strictly increasing and lhs[j] <= rhs[j] for every pair.
bool is_in_lex(const LexLeq& c);

// Same check after relabelling each index by its position in `order`
// (order[p] is the variable placed at position p).
bool is_in_lex_under_order(const LexLeq& c, const std::vector<int>& order);

// Throws std::invalid_argument when sigma is not a bijection.
GeneralLexLeader lexleader_from_perm(const Permutation& sigma);

// Shrink the full lexleader of an involution to one pair per swapped couple:
// fixed points are dropped, and of the two pairs a transposition (a b)
// contributes only the one with the earlier variable on the left survives.
// The result is always accepted by is_in_lex (under the order used).
// Throws std::invalid_argument when sigma is not an involution.
LexLeq reduce_disjoint_transpositions(const Permutation& sigma);
LexLeq reduce_disjoint_transpositions(const Permutation& sigma,
                                      const std::vector<int>& order);

// Evaluate the constraint on a total assignment (values indexed by variable).
bool lex_satisfied(const LexLeq& c, const std::vector<int>& values);

} // namespace lexenum
