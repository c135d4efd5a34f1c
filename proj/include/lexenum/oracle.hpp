#pragma once

#include <cstdint>
#include <vector>

#include "lexenum/model.hpp"

namespace lexenum {

// Snapshot handed to an extension oracle: the instance, the current
// (possibly reduced) domains, and the consecutive prefix assigned so far.
// Assigned variables always hold singleton domains equal to their value.
struct OracleQuery {
    const Csp& csp;
    const std::vector<Domain>& domains;
    const PartialAssignment& assignment;
};

enum class OracleAnswer { extendable, not_extendable, budget_exhausted };

// Answers whether the prefix extends to a total assignment inside the query
// domains that satisfies the problem constraints. Lex constraints are the
// caller's responsibility and are never consulted here.
class Oracle {
public:
    virtual ~Oracle() = default;
    virtual OracleAnswer extends(const OracleQuery& q) = 0;
    virtual const char* name() const = 0;
};

// Complete backtracking search over the problem constraints, propagating to
// a fixpoint at every node. Answers budget_exhausted (never a wrong answer)
// when a single query visits more than node_budget nodes.
class ExactOracle final : public Oracle {
public:
    explicit ExactOracle(std::uint64_t node_budget = 1'000'000)
        : node_budget_(node_budget) {}

    OracleAnswer extends(const OracleQuery& q) override;
    const char* name() const override { return "exact"; }

private:
    std::uint64_t node_budget_;
};

// Matching-based oracle for instances whose non-unary constraints form a
// complete pairwise-difference clique. Extendability is decided by looking
// for a matching that gives every clique variable its own value from its
// current domain.
class AlldiffOracle final : public Oracle {
public:
    // Validates the clique shape; throws std::invalid_argument when the
    // instance does not fit.
    explicit AlldiffOracle(const Csp& csp);

    OracleAnswer extends(const OracleQuery& q) override;
    const char* name() const override { return "alldiff"; }

    const std::vector<int>& clique() const { return clique_; }

private:
    std::vector<int> clique_;
    std::vector<UnaryIn> unary_;
};

} // namespace lexenum
