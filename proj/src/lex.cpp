#include "lexenum/lex.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <stdexcept>

namespace lexenum {

bool is_in_lex(const LexLeq& c) {
    if (c.lhs.size() != c.rhs.size())
        return false;
    for (int j = 0; j < c.size(); ++j) {
        const auto sj = static_cast<std::size_t>(j);
        if (j > 0 && c.lhs[sj - 1] >= c.lhs[sj])
            return false;
        if (c.lhs[sj] > c.rhs[sj])
            return false;
    }
    return true;
}

bool is_in_lex_under_order(const LexLeq& c, const std::vector<int>& order) {
    if (c.lhs.size() != c.rhs.size())
        return false;
    std::vector<int> pos(order.size());
    for (std::size_t p = 0; p < order.size(); ++p)
        pos[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
    LexLeq relabelled = c;
    for (int& i : relabelled.lhs)
        i = pos[static_cast<std::size_t>(i)];
    for (int& i : relabelled.rhs)
        i = pos[static_cast<std::size_t>(i)];
    return is_in_lex(relabelled);
}

GeneralLexLeader lexleader_from_perm(const Permutation& sigma) {
    if (!is_permutation_image(sigma.image()))
        throw std::invalid_argument("lexleader_from_perm: not a permutation");
    GeneralLexLeader g;
    g.lhs.resize(static_cast<std::size_t>(sigma.degree()));
    std::iota(g.lhs.begin(), g.lhs.end(), 0);
    g.rhs = sigma.image();
    return g;
}

LexLeq reduce_disjoint_transpositions(const Permutation& sigma) {
    std::vector<int> order(static_cast<std::size_t>(sigma.degree()));
    std::iota(order.begin(), order.end(), 0);
    return reduce_disjoint_transpositions(sigma, order);
}

LexLeq reduce_disjoint_transpositions(const Permutation& sigma,
                                      const std::vector<int>& order) {
    const auto pairs = sigma.transpositions(); // throws unless involution
    std::vector<int> pos(order.size());
    for (std::size_t p = 0; p < order.size(); ++p)
        pos[static_cast<std::size_t>(order[p])] = static_cast<int>(p);

    // One pair per swap, earlier-positioned variable on the left, pairs
    // sorted by that position.
    std::vector<std::pair<int, int>> sided;
    sided.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        if (pos[static_cast<std::size_t>(a)] > pos[static_cast<std::size_t>(b)])
            std::swap(a, b);
        sided.emplace_back(a, b);
    }
    std::sort(sided.begin(), sided.end(), [&](const auto& x, const auto& y) {
        return pos[static_cast<std::size_t>(x.first)] <
               pos[static_cast<std::size_t>(y.first)];
    });

    LexLeq out;
    for (const auto& [a, b] : sided) {
        out.lhs.push_back(a);
        out.rhs.push_back(b);
    }
    assert(is_in_lex_under_order(out, order));
    return out;
}

bool lex_satisfied(const LexLeq& c, const std::vector<int>& values) {
    for (int j = 0; j < c.size(); ++j) {
        const auto sj = static_cast<std::size_t>(j);
        const int l = values[static_cast<std::size_t>(c.lhs[sj])];
        const int r = values[static_cast<std::size_t>(c.rhs[sj])];
        if (l < r)
            return true;
        if (l > r)
            return false;
    }
    return true;
}

namespace {

bool occurrences_distinct(const LexLeq& c) {
    std::set<int> seen;
    for (int i : c.lhs)
        if (!seen.insert(i).second)
            return false;
    for (int i : c.rhs)
        if (!seen.insert(i).second)
            return false;
    return true;
}

// All 2k occurrences name distinct variables, so each pair can be filtered
// against the partner's bounds alone. Find the first pair that is not fixed
// to equal values, decide whether the remaining positions could still settle
// the comparison, and prune only that pair; repeat until stable.
PropagateResult filter_distinct(const LexLeq& c, std::vector<Domain>& domains,
                                Trail& trail) {
    const int k = c.size();
    bool any = false;

    // Could positions i.. still satisfy the constraint, taking every left
    // variable at its min and every right one at its max?
    auto feasible_from = [&](int i) {
        for (; i < k; ++i) {
            const auto si = static_cast<std::size_t>(i);
            const int lmin = domains[static_cast<std::size_t>(c.lhs[si])].min();
            const int rmax = domains[static_cast<std::size_t>(c.rhs[si])].max();
            if (lmin < rmax)
                return true;
            if (lmin > rmax)
                return false;
        }
        return true;
    };

    for (;;) {
        int alpha = 0;
        while (alpha < k) {
            const auto sa = static_cast<std::size_t>(alpha);
            const Domain& l = domains[static_cast<std::size_t>(c.lhs[sa])];
            const Domain& r = domains[static_cast<std::size_t>(c.rhs[sa])];
            if (l.is_singleton() && r.is_singleton() && l.min() == r.min())
                ++alpha;
            else
                break;
        }
        if (alpha == k)
            break; // fixed equal on every pair

        if (!feasible_from(alpha))
            return PropagateResult::conflict;
        const bool need_strict = !feasible_from(alpha + 1);

        const auto sa = static_cast<std::size_t>(alpha);
        Domain& l = domains[static_cast<std::size_t>(c.lhs[sa])];
        Domain& r = domains[static_cast<std::size_t>(c.rhs[sa])];
        const int rmax = r.max();
        const int lmin = l.min();
        bool changed = false;
        for (int v : l.values()) {
            if (v > rmax || (need_strict && v == rmax)) {
                l.remove(v);
                trail.record(c.lhs[sa], v);
                changed = true;
            }
        }
        for (int v : r.values()) {
            if (v < lmin || (need_strict && v == lmin)) {
                r.remove(v);
                trail.record(c.rhs[sa], v);
                changed = true;
            }
        }
        assert(!l.empty() && !r.empty());
        if (!changed)
            break;
        any = true;
    }
    return any ? PropagateResult::revised : PropagateResult::unchanged;
}

// Union-find over the variables of one constraint, each class holding the
// intersection of its members' domains.
struct EqualityClasses {
    std::vector<int> parent;
    std::vector<std::vector<int>> vals; // at roots: sorted class domain

    explicit EqualityClasses(std::size_t n) : parent(n), vals(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    }

    // Merge the classes of a and b, intersecting their domains. Returns
    // false when the intersection is empty.
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return true;
        std::vector<int> both;
        std::set_intersection(vals[static_cast<std::size_t>(a)].begin(),
                              vals[static_cast<std::size_t>(a)].end(),
                              vals[static_cast<std::size_t>(b)].begin(),
                              vals[static_cast<std::size_t>(b)].end(),
                              std::back_inserter(both));
        if (both.empty())
            return false;
        parent[static_cast<std::size_t>(b)] = a;
        vals[static_cast<std::size_t>(a)] = std::move(both);
        return true;
    }
};

std::vector<int> constraint_vars(const LexLeq& c) {
    std::vector<int> vars(c.lhs);
    vars.insert(vars.end(), c.rhs.begin(), c.rhs.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

} // namespace

bool lex_satisfiable(const LexLeq& c, const std::vector<Domain>& domains,
                     int pin_var, int pin_value) {
    const int k = c.size();
    if (k == 0)
        return true;

    const std::vector<int> vars = constraint_vars(c);
    std::vector<int> local(domains.size(), -1);
    EqualityClasses classes(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        local[static_cast<std::size_t>(vars[i])] = static_cast<int>(i);
        if (vars[i] == pin_var) {
            if (!domains[static_cast<std::size_t>(pin_var)].contains(pin_value))
                return false;
            classes.vals[i] = {pin_value};
        } else {
            classes.vals[i] = domains[static_cast<std::size_t>(vars[i])].values();
        }
    }

    // The constraint holds through a strict pair at some position j with all
    // earlier pairs equal, or through equality everywhere. Walk the pairs,
    // folding each one into the equality classes after probing whether a
    // strict inequality is still available at its position.
    for (int j = 0; j < k; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        const int a = classes.find(local[static_cast<std::size_t>(c.lhs[sj])]);
        const int b = classes.find(local[static_cast<std::size_t>(c.rhs[sj])]);
        if (a != b) {
            const auto& da = classes.vals[static_cast<std::size_t>(a)];
            const auto& db = classes.vals[static_cast<std::size_t>(b)];
            if (da.front() < db.back())
                return true; // strict here, later positions free
            if (!classes.merge(a, b))
                return false; // equality impossible, and so is any longer prefix
        }
    }
    return true; // every pair can sit at equal values
}

PropagateResult propagate_lex_gac(const LexLeq& c, std::vector<Domain>& domains,
                                  Trail& trail) {
    if (c.lhs.size() != c.rhs.size())
        throw std::invalid_argument("lex constraint sides differ in length");
    if (c.size() == 0)
        return PropagateResult::unchanged;
    if (occurrences_distinct(c))
        return filter_distinct(c, domains, trail);

    // Repeated variables: test every value for support directly, rescanning
    // until nothing is removed any more.
    const std::vector<int> vars = constraint_vars(c);
    bool any = false;
    for (;;) {
        bool changed = false;
        for (int var : vars) {
            Domain& d = domains[static_cast<std::size_t>(var)];
            for (int v : d.values()) {
                if (!lex_satisfiable(c, domains, var, v)) {
                    d.remove(v);
                    trail.record(var, v);
                    changed = true;
                    if (d.empty())
                        return PropagateResult::conflict;
                }
            }
        }
        if (!changed)
            break;
        any = true;
    }
    return any ? PropagateResult::revised : PropagateResult::unchanged;
}

} // namespace lexenum
