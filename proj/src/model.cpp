#include "lexenum/model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lexenum/lex.hpp"

namespace lexenum {

Domain::Domain(int lo, int hi) : lo_(lo), hi_(hi) {
    if (lo > hi)
        throw std::invalid_argument("domain interval is empty");
    count_ = hi - lo + 1;
    present_.assign(static_cast<std::size_t>(count_), 1);
}

int Domain::min() const {
    assert(count_ > 0);
    for (int v = lo_;; ++v)
        if (present_[static_cast<std::size_t>(v - lo_)])
            return v;
}

int Domain::max() const {
    assert(count_ > 0);
    for (int v = hi_;; --v)
        if (present_[static_cast<std::size_t>(v - lo_)])
            return v;
}

bool Domain::remove(int v) {
    if (!contains(v))
        return false;
    present_[static_cast<std::size_t>(v - lo_)] = 0;
    --count_;
    return true;
}

void Domain::restore(int v) {
    assert(v >= lo_ && v <= hi_ && !present_[static_cast<std::size_t>(v - lo_)]);
    present_[static_cast<std::size_t>(v - lo_)] = 1;
    ++count_;
}

std::vector<int> Domain::values() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (int v = lo_; v <= hi_; ++v)
        if (present_[static_cast<std::size_t>(v - lo_)])
            out.push_back(v);
    return out;
}

void Trail::undo_to(Marker m, std::vector<Domain>& domains) {
    assert(m <= entries_.size());
    while (entries_.size() > m) {
        const Entry& e = entries_.back();
        domains[static_cast<std::size_t>(e.var)].restore(e.value);
        entries_.pop_back();
    }
}

void PartialAssignment::push(int var, int value) {
    if (assigns(var))
        throw std::invalid_argument("variable assigned twice");
    literals_.emplace_back(var, value);
}

void PartialAssignment::pop() {
    assert(!literals_.empty());
    literals_.pop_back();
}

bool PartialAssignment::assigns(int var) const {
    for (const auto& [v, _] : literals_)
        if (v == var)
            return true;
    return false;
}

std::optional<int> PartialAssignment::value_of(int var) const {
    for (const auto& [v, val] : literals_)
        if (v == var)
            return val;
    return std::nullopt;
}

bool PartialAssignment::consecutive_under(const std::vector<int>& order) const {
    if (literals_.size() > order.size())
        return false;
    std::set<int> assigned;
    for (const auto& [v, _] : literals_)
        assigned.insert(v);
    if (assigned.size() != literals_.size())
        return false;
    for (std::size_t p = 0; p < literals_.size(); ++p)
        if (assigned.count(order[p]) == 0)
            return false;
    return true;
}

std::vector<int> PartialAssignment::to_values(int num_vars) const {
    if (!is_total(num_vars))
        throw std::invalid_argument("assignment is not total");
    std::vector<int> out(static_cast<std::size_t>(num_vars));
    for (const auto& [v, val] : literals_)
        out[static_cast<std::size_t>(v)] = val;
    return out;
}

namespace {

bool index_ok(int i, int n) { return i >= 0 && i < n; }

void check_lex_indices(const LexLeq& c, int n, int which, ValidationReport& rep) {
    std::ostringstream os;
    if (c.lhs.size() != c.rhs.size()) {
        os << "lex constraint " << which << ": side lengths differ";
        rep.errors.push_back(os.str());
        return;
    }
    for (int j = 0; j < c.size(); ++j) {
        if (!index_ok(c.lhs[static_cast<std::size_t>(j)], n) ||
            !index_ok(c.rhs[static_cast<std::size_t>(j)], n)) {
            os << "lex constraint " << which << ": index out of range";
            rep.errors.push_back(os.str());
            return;
        }
    }
}

} // namespace

ValidationReport validate_csp(const Csp& csp) {
    ValidationReport rep;
    const int n = csp.num_vars;
    if (n < 1) {
        rep.errors.push_back("instance has no variables");
        return rep;
    }
    if (static_cast<int>(csp.domains.size()) != n) {
        rep.errors.push_back("domain count does not match variable count");
        return rep;
    }
    for (int x = 0; x < n; ++x) {
        if (csp.domains[static_cast<std::size_t>(x)].size() == 0) {
            std::ostringstream os;
            os << "variable " << x + 1 << ": empty domain";
            rep.errors.push_back(os.str());
        }
    }

    int which = 0;
    for (const Constraint& c : csp.constraints) {
        ++which;
        std::ostringstream os;
        os << "constraint " << which << ": ";
        if (const auto* ext = std::get_if<Extensional>(&c)) {
            std::set<int> seen;
            bool scope_ok = true;
            for (int i : ext->scope) {
                if (!index_ok(i, n)) {
                    rep.errors.push_back(os.str() + "scope index out of range");
                    scope_ok = false;
                    break;
                }
                if (!seen.insert(i).second) {
                    rep.errors.push_back(os.str() + "repeated variable in scope");
                    scope_ok = false;
                    break;
                }
            }
            if (!scope_ok)
                continue;
            std::set<std::vector<int>> tuples_seen;
            for (const auto& t : ext->tuples) {
                if (t.size() != ext->scope.size()) {
                    rep.errors.push_back(os.str() + "tuple arity mismatch");
                    break;
                }
                bool in_range = true;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    const Domain& d =
                        csp.domains[static_cast<std::size_t>(ext->scope[i])];
                    if (t[i] < d.initial_min() || t[i] > d.initial_max()) {
                        rep.errors.push_back(os.str() + "tuple value out of range");
                        in_range = false;
                        break;
                    }
                }
                if (!in_range)
                    break;
                if (!tuples_seen.insert(t).second) {
                    rep.errors.push_back(os.str() + "duplicate tuple");
                    break;
                }
            }
        } else if (const auto* neq = std::get_if<BinaryNeq>(&c)) {
            if (!index_ok(neq->a, n) || !index_ok(neq->b, n))
                rep.errors.push_back(os.str() + "scope index out of range");
        } else if (const auto* un = std::get_if<UnaryIn>(&c)) {
            if (!index_ok(un->var, n))
                rep.errors.push_back(os.str() + "scope index out of range");
            else if (!std::is_sorted(un->values.begin(), un->values.end()) ||
                     std::adjacent_find(un->values.begin(), un->values.end()) !=
                         un->values.end())
                rep.errors.push_back(os.str() + "value list not sorted and duplicate-free");
        }
    }

    which = 0;
    for (const Permutation& s : csp.symmetries) {
        ++which;
        if (s.degree() != n || !is_permutation_image(s.image())) {
            std::ostringstream os;
            os << "symmetry " << which << ": not a permutation of the variables";
            rep.errors.push_back(os.str());
        }
    }

    which = 0;
    for (const LexLeq& c : csp.lex_constraints) {
        ++which;
        check_lex_indices(c, n, which, rep);
    }

    if (csp.declared_order && !is_permutation_image(*csp.declared_order))
        rep.errors.push_back("order line: not a permutation of the variables");
    if (csp.declared_order && static_cast<int>(csp.declared_order->size()) != n)
        rep.errors.push_back("order line: wrong length");

    return rep;
}

double instance_size_bits(const Csp& csp) {
    const double n = static_cast<double>(csp.num_vars);
    int max_dom = 0;
    for (const Domain& d : csp.domains)
        max_dom = std::max(max_dom, d.initial_max() - d.initial_min() + 1);
    double bits = std::log2(n);
    for (const Constraint& c : csp.constraints) {
        if (const auto* ext = std::get_if<Extensional>(&c)) {
            bits += static_cast<double>(ext->scope.size()) *
                    static_cast<double>(ext->tuples.size()) *
                    std::log2(static_cast<double>(max_dom));
        }
    }
    for (const LexLeq& c : csp.lex_constraints)
        bits += 2.0 * static_cast<double>(c.size()) * std::log2(n);
    return bits;
}

namespace {

// Does any allowed tuple of ext, with every coordinate still in its domain,
// put `value` on scope position `pos`?
bool extensional_supported(const Extensional& ext,
                           const std::vector<Domain>& domains, std::size_t pos,
                           int value) {
    for (const auto& t : ext.tuples) {
        if (t[pos] != value)
            continue;
        bool live = true;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!domains[static_cast<std::size_t>(ext.scope[i])].contains(t[i])) {
                live = false;
                break;
            }
        }
        if (live)
            return true;
    }
    return false;
}

PropagateResult revise_extensional(const Extensional& ext,
                                   std::vector<Domain>& domains, Trail& trail) {
    bool removed = false;
    for (std::size_t pos = 0; pos < ext.scope.size(); ++pos) {
        Domain& d = domains[static_cast<std::size_t>(ext.scope[pos])];
        for (int v : d.values()) {
            if (!extensional_supported(ext, domains, pos, v)) {
                d.remove(v);
                trail.record(ext.scope[pos], v);
                removed = true;
                if (d.empty())
                    return PropagateResult::conflict;
            }
        }
    }
    return removed ? PropagateResult::revised : PropagateResult::unchanged;
}

PropagateResult revise_neq(const BinaryNeq& neq, std::vector<Domain>& domains,
                           Trail& trail) {
    if (neq.a == neq.b) {
        // x != x can never hold; empty the domain outright.
        Domain& d = domains[static_cast<std::size_t>(neq.a)];
        for (int v : d.values()) {
            d.remove(v);
            trail.record(neq.a, v);
        }
        return PropagateResult::conflict;
    }
    bool removed = false;
    auto prune = [&](int from, int against) {
        Domain& d = domains[static_cast<std::size_t>(from)];
        const Domain& o = domains[static_cast<std::size_t>(against)];
        if (!o.is_singleton())
            return PropagateResult::unchanged;
        int v = o.min();
        if (d.remove(v)) {
            trail.record(from, v);
            removed = true;
            if (d.empty())
                return PropagateResult::conflict;
        }
        return PropagateResult::unchanged;
    };
    if (prune(neq.a, neq.b) == PropagateResult::conflict)
        return PropagateResult::conflict;
    if (prune(neq.b, neq.a) == PropagateResult::conflict)
        return PropagateResult::conflict;
    return removed ? PropagateResult::revised : PropagateResult::unchanged;
}

PropagateResult revise_unary(const UnaryIn& un, std::vector<Domain>& domains,
                             Trail& trail) {
    Domain& d = domains[static_cast<std::size_t>(un.var)];
    bool removed = false;
    for (int v : d.values()) {
        if (!std::binary_search(un.values.begin(), un.values.end(), v)) {
            d.remove(v);
            trail.record(un.var, v);
            removed = true;
        }
    }
    if (d.empty())
        return PropagateResult::conflict;
    return removed ? PropagateResult::revised : PropagateResult::unchanged;
}

} // namespace

PropagateResult enforce_gac_extensional(const Constraint& c,
                                        std::vector<Domain>& domains,
                                        Trail& trail) {
    if (const auto* ext = std::get_if<Extensional>(&c))
        return revise_extensional(*ext, domains, trail);
    if (const auto* neq = std::get_if<BinaryNeq>(&c))
        return revise_neq(*neq, domains, trail);
    return revise_unary(std::get<UnaryIn>(c), domains, trail);
}

FixpointResult propagate_fixpoint(const Csp& csp, std::vector<Domain>& domains,
                                  Trail& trail, PropagationScope scope,
                                  std::uint64_t* revision_count) {
    bool changed = true;
    while (changed) {
        changed = false;
        if (scope != PropagationScope::lex_only) {
            for (const Constraint& c : csp.constraints) {
                PropagateResult r = enforce_gac_extensional(c, domains, trail);
                if (revision_count)
                    ++*revision_count;
                if (r == PropagateResult::conflict)
                    return FixpointResult::conflict;
                if (r == PropagateResult::revised)
                    changed = true;
            }
        }
        if (scope != PropagationScope::problem_only) {
            for (const LexLeq& c : csp.lex_constraints) {
                PropagateResult r = propagate_lex_gac(c, domains, trail);
                if (revision_count)
                    ++*revision_count;
                if (r == PropagateResult::conflict)
                    return FixpointResult::conflict;
                if (r == PropagateResult::revised)
                    changed = true;
            }
        }
    }
    return FixpointResult::fixpoint;
}

bool constraint_allows(const Constraint& c, const std::vector<int>& values) {
    if (const auto* ext = std::get_if<Extensional>(&c)) {
        for (const auto& t : ext->tuples) {
            bool match = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (values[static_cast<std::size_t>(ext->scope[i])] != t[i]) {
                    match = false;
                    break;
                }
            }
            if (match)
                return true;
        }
        return false;
    }
    if (const auto* neq = std::get_if<BinaryNeq>(&c))
        return values[static_cast<std::size_t>(neq->a)] !=
               values[static_cast<std::size_t>(neq->b)];
    const auto& un = std::get<UnaryIn>(c);
    return std::binary_search(un.values.begin(), un.values.end(),
                              values[static_cast<std::size_t>(un.var)]);
}

bool is_solution(const Csp& csp, const PartialAssignment& a) {
    if (!a.is_total(csp.num_vars))
        throw std::invalid_argument("is_solution needs a total assignment");
    const std::vector<int> values = a.to_values(csp.num_vars);
    for (const Constraint& c : csp.constraints)
        if (!constraint_allows(c, values))
            return false;
    for (const LexLeq& c : csp.lex_constraints)
        if (!lex_satisfied(c, values))
            return false;
    return true;
}

bool assign_value(std::vector<Domain>& domains, Trail& trail, int var, int value) {
    Domain& d = domains[static_cast<std::size_t>(var)];
    for (int v : d.values()) {
        if (v == value)
            continue;
        d.remove(v);
        trail.record(var, v);
    }
    return d.contains(value);
}

std::vector<Domain> initial_domains(const Csp& csp) {
    std::vector<Domain> out;
    out.reserve(csp.domains.size());
    for (const Domain& d : csp.domains)
        out.emplace_back(d.initial_min(), d.initial_max());
    return out;
}

} // namespace lexenum
