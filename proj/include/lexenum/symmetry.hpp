#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lexenum/model.hpp"
#include "lexenum/perm.hpp"

namespace lexenum {

struct CapExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Literal = std::pair<int, int>; // (variable, value)

// Conflict structure of an instance: one node per literal, one edge per set
// of literals that cannot hold together. Same-variable literal pairs and
// constraint-forbidden tuples both contribute edges. Edges are stored sorted
// so that set membership is canonical.
struct Msc {
    int num_vars = 0;
    std::vector<Literal> nodes;
    std::set<std::vector<Literal>> edges;
};

struct MscCaps {
    std::size_t max_nodes = 4096;
    std::size_t max_edges = 1u << 20;
};

// Throws CapExceededError when the literal or edge count would exceed caps.
Msc build_msc(const Csp& csp, const MscCaps& caps = {});

// True when mapping every literal (x, d) to (sigma(x), d) permutes the edge
// set of the instance's conflict structure. Requires the domains of every
// moved variable pair to coincide; throws std::invalid_argument otherwise.
bool verify_variable_symmetry(const Csp& csp, const Permutation& sigma,
                              const MscCaps& caps = {});

// Image of a total assignment: the returned vector s' has
// s'[sigma(i)] = values[i].
std::vector<int> apply_symmetry(const Permutation& sigma,
                                const std::vector<int>& values);

// Closure of the generators under composition, identity included. Sorted by
// image table. Throws CapExceededError when the group grows past max_size.
std::vector<Permutation> generate_group(const std::vector<Permutation>& generators,
                                        std::size_t max_size);

// Partition of `solutions` into orbits under the group generated by
// `generators`. Each orbit lists indices into `solutions` in increasing
// order. Throws std::invalid_argument when a generator maps a solution to an
// assignment outside the set.
std::vector<std::vector<std::size_t>> orbits_of_solutions(
    const std::vector<std::vector<int>>& solutions,
    const std::vector<Permutation>& generators);

} // namespace lexenum
