#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lexenum/lexleq.hpp"
#include "lexenum/perm.hpp"

namespace lexenum {

// Current value set of one variable. Starts as the full integer interval
// [initial_min, initial_max]; search and propagation remove values, the trail
// puts them back.
class Domain {
public:
    Domain() = default;
    // Requires lo <= hi.
    Domain(int lo, int hi);

    int initial_min() const { return lo_; }
    int initial_max() const { return hi_; }

    bool contains(int v) const {
        return v >= lo_ && v <= hi_ && present_[static_cast<std::size_t>(v - lo_)];
    }
    int size() const { return count_; }
    bool empty() const { return count_ == 0; }

    // min/max of the remaining values; call only on a non-empty domain.
    int min() const;
    int max() const;

    // Returns false when v was not present.
    bool remove(int v);
    // Puts back a previously removed value.
    void restore(int v);

    std::vector<int> values() const;

    bool is_singleton() const { return count_ == 1; }

    bool operator==(const Domain&) const = default;

private:
    int lo_ = 0;
    int hi_ = -1;
    int count_ = 0;
    std::vector<char> present_;
};

// Undo log of domain removals. Markers delimit the removals done since a
// choice point so they can be restored in reverse order.
class Trail {
public:
    using Marker = std::size_t;

    Marker mark() const { return entries_.size(); }
    void record(int var, int value) { entries_.push_back({var, value}); }
    void undo_to(Marker m, std::vector<Domain>& domains);
    std::size_t size() const { return entries_.size(); }

private:
    struct Entry {
        int var;
        int value;
    };
    std::vector<Entry> entries_;
};

struct Extensional {
    std::vector<int> scope;               // distinct variable indices
    std::vector<std::vector<int>> tuples; // allowed tuples, arity == scope size

    bool operator==(const Extensional&) const = default;
};

struct BinaryNeq {
    int a = 0;
    int b = 0;

    bool operator==(const BinaryNeq&) const = default;
};

struct UnaryIn {
    int var = 0;
    std::vector<int> values; // sorted, duplicate-free

    bool operator==(const UnaryIn&) const = default;
};

using Constraint = std::variant<Extensional, BinaryNeq, UnaryIn>;

// Sequence of (variable, value) literals in assignment order. A variable may
// appear at most once.
class PartialAssignment {
public:
    void push(int var, int value);
    void pop();
    void clear() { literals_.clear(); }

    bool assigns(int var) const;
    std::optional<int> value_of(int var) const;

    int size() const { return static_cast<int>(literals_.size()); }
    bool is_total(int num_vars) const { return size() == num_vars; }

    // True when the assigned variables are exactly the first size() entries
    // of `order` (in any assignment sequence).
    bool consecutive_under(const std::vector<int>& order) const;

    const std::vector<std::pair<int, int>>& literals() const { return literals_; }

    // Values indexed by variable; requires is_total(num_vars).
    std::vector<int> to_values(int num_vars) const;

    bool operator==(const PartialAssignment&) const = default;

private:
    std::vector<std::pair<int, int>> literals_;
};

struct Csp {
    std::string name;
    int num_vars = 0;
    std::vector<Domain> domains; // one per variable
    std::vector<Constraint> constraints;
    std::vector<Permutation> symmetries;
    std::vector<LexLeq> lex_constraints;
    // Declared variable order (a permutation of 0..n-1), if the instance
    // carries one; order[p] is the variable at position p.
    std::optional<std::vector<int>> declared_order;

    bool operator==(const Csp&) const = default;
};

struct ValidationReport {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

enum class PropagateResult { unchanged, revised, conflict };
enum class FixpointResult { fixpoint, conflict };
enum class PropagationScope { all, problem_only, lex_only };

// Structural checks: domains present and non-empty, scope indices in range,
// tuple arities and values in range, duplicate-free relations, symmetry and
// order lines bijective, lex constraint indices in range.
ValidationReport validate_csp(const Csp& csp);

// Encoding size in bits: log2(n), plus |scope| * |tuples| * log2(M) per
// extensional constraint (M = largest initial domain size), plus
// 2k * log2(n) per k-pair lex constraint.
double instance_size_bits(const Csp& csp);

// One generalised arc consistency pass for a single constraint: removes every
// value of every scope variable that no allowed tuple supports. Removals are
// recorded on the trail. Returns conflict when a domain empties.
PropagateResult enforce_gac_extensional(const Constraint& c,
                                        std::vector<Domain>& domains,
                                        Trail& trail);

// Run single-constraint passes over the selected constraints until no pass
// changes a domain. revision_count, when given, is incremented once per
// single-constraint pass.
FixpointResult propagate_fixpoint(const Csp& csp, std::vector<Domain>& domains,
                                  Trail& trail,
                                  PropagationScope scope = PropagationScope::all,
                                  std::uint64_t* revision_count = nullptr);

// True when the total assignment satisfies every constraint, problem and lex
// alike. Throws std::invalid_argument when a is not total.
bool is_solution(const Csp& csp, const PartialAssignment& a);

// Single-constraint satisfaction check on a total value vector.
bool constraint_allows(const Constraint& c, const std::vector<int>& values);

// Reduce domains[var] to {value}, recording removals. Returns false (leaving
// the domain empty) when value is not present.
bool assign_value(std::vector<Domain>& domains, Trail& trail, int var, int value);

// Fresh full-interval domains copied from the instance.
std::vector<Domain> initial_domains(const Csp& csp);

} // namespace lexenum
