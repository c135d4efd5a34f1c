#include "lexenum/symmetry.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace lexenum {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    if (!is_permutation_image(image_))
        throw std::invalid_argument("image table is not a permutation");
}

Permutation Permutation::identity(int n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int a, int b) {
    Permutation p = identity(n);
    std::swap(p.image_[static_cast<std::size_t>(a)],
              p.image_[static_cast<std::size_t>(b)]);
    return p;
}

Permutation Permutation::inverse() const {
    std::vector<int> img(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
        img[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
    return Permutation(std::move(img));
}

Permutation Permutation::then(const Permutation& g) const {
    assert(degree() == g.degree());
    std::vector<int> img(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
        img[i] = g.image_[static_cast<std::size_t>(image_[i])];
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] != static_cast<int>(i))
            return false;
    return true;
}

bool Permutation::is_involution() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[static_cast<std::size_t>(image_[i])] != static_cast<int>(i))
            return false;
    return true;
}

std::vector<std::pair<int, int>> Permutation::transpositions() const {
    if (!is_involution())
        throw std::invalid_argument("permutation is not an involution");
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < degree(); ++i) {
        const int j = image_[static_cast<std::size_t>(i)];
        if (i < j)
            out.emplace_back(i, j);
    }
    return out;
}

bool is_permutation_image(const std::vector<int>& image) {
    const int n = static_cast<int>(image.size());
    std::vector<char> hit(image.size(), 0);
    for (int v : image) {
        if (v < 0 || v >= n || hit[static_cast<std::size_t>(v)])
            return false;
        hit[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

namespace {

std::vector<Literal> sorted_edge(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    return lits;
}

void insert_edge(Msc& msc, std::vector<Literal> lits, const MscCaps& caps) {
    msc.edges.insert(sorted_edge(std::move(lits)));
    if (msc.edges.size() > caps.max_edges)
        throw CapExceededError("conflict structure exceeds the edge cap");
}

// Enumerate the tuples over the initial scope domains that the relation does
// not allow, handing each one to emit.
template <typename F>
void for_each_forbidden(const Extensional& ext, const Csp& csp,
                        const MscCaps& caps, F&& emit) {
    std::set<std::vector<int>> allowed(ext.tuples.begin(), ext.tuples.end());
    std::vector<int> tuple(ext.scope.size());
    std::uint64_t visited = 0;

    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == ext.scope.size()) {
            if (++visited > caps.max_edges)
                throw CapExceededError("conflict structure exceeds the edge cap");
            if (allowed.count(tuple) == 0)
                emit(tuple);
            return;
        }
        const Domain& d = csp.domains[static_cast<std::size_t>(ext.scope[pos])];
        for (int v = d.initial_min(); v <= d.initial_max(); ++v) {
            tuple[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
}

} // namespace

Msc build_msc(const Csp& csp, const MscCaps& caps) {
    Msc msc;
    msc.num_vars = csp.num_vars;

    std::size_t node_count = 0;
    for (const Domain& d : csp.domains)
        node_count += static_cast<std::size_t>(d.initial_max() - d.initial_min() + 1);
    if (node_count > caps.max_nodes)
        throw CapExceededError("conflict structure exceeds the node cap");

    for (int x = 0; x < csp.num_vars; ++x) {
        const Domain& d = csp.domains[static_cast<std::size_t>(x)];
        for (int v = d.initial_min(); v <= d.initial_max(); ++v)
            msc.nodes.emplace_back(x, v);
    }

    // A variable takes one value: any two of its literals clash.
    for (int x = 0; x < csp.num_vars; ++x) {
        const Domain& d = csp.domains[static_cast<std::size_t>(x)];
        for (int v = d.initial_min(); v <= d.initial_max(); ++v)
            for (int w = v + 1; w <= d.initial_max(); ++w)
                insert_edge(msc, {{x, v}, {x, w}}, caps);
    }

    for (const Constraint& c : csp.constraints) {
        if (const auto* ext = std::get_if<Extensional>(&c)) {
            for_each_forbidden(*ext, csp, caps, [&](const std::vector<int>& t) {
                std::vector<Literal> lits;
                lits.reserve(t.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    lits.emplace_back(ext->scope[i], t[i]);
                insert_edge(msc, std::move(lits), caps);
            });
        } else if (const auto* neq = std::get_if<BinaryNeq>(&c)) {
            const Domain& da = csp.domains[static_cast<std::size_t>(neq->a)];
            const Domain& db = csp.domains[static_cast<std::size_t>(neq->b)];
            const int lo = std::max(da.initial_min(), db.initial_min());
            const int hi = std::min(da.initial_max(), db.initial_max());
            for (int v = lo; v <= hi; ++v)
                insert_edge(msc, {{neq->a, v}, {neq->b, v}}, caps);
        } else {
            const auto& un = std::get<UnaryIn>(c);
            const Domain& d = csp.domains[static_cast<std::size_t>(un.var)];
            for (int v = d.initial_min(); v <= d.initial_max(); ++v)
                if (!std::binary_search(un.values.begin(), un.values.end(), v))
                    insert_edge(msc, {{un.var, v}}, caps);
        }
    }
    return msc;
}

bool verify_variable_symmetry(const Csp& csp, const Permutation& sigma,
                              const MscCaps& caps) {
    if (sigma.degree() != csp.num_vars)
        throw std::invalid_argument("symmetry degree does not match the instance");
    for (int x = 0; x < csp.num_vars; ++x) {
        const int y = sigma(x);
        if (y == x)
            continue;
        const Domain& dx = csp.domains[static_cast<std::size_t>(x)];
        const Domain& dy = csp.domains[static_cast<std::size_t>(y)];
        if (dx.initial_min() != dy.initial_min() ||
            dx.initial_max() != dy.initial_max())
            throw std::invalid_argument("domains differ across permuted variables");
    }

    const Msc msc = build_msc(csp, caps);
    for (const auto& edge : msc.edges) {
        std::vector<Literal> image;
        image.reserve(edge.size());
        for (const auto& [x, v] : edge)
            image.emplace_back(sigma(x), v);
        if (msc.edges.count(sorted_edge(std::move(image))) == 0)
            return false;
    }
    return true;
}

std::vector<int> apply_symmetry(const Permutation& sigma,
                                const std::vector<int>& values) {
    if (sigma.degree() != static_cast<int>(values.size()))
        throw std::invalid_argument("symmetry degree does not match the assignment");
    std::vector<int> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[static_cast<std::size_t>(sigma(static_cast<int>(i)))] = values[i];
    return out;
}

std::vector<Permutation> generate_group(const std::vector<Permutation>& generators,
                                        std::size_t max_size) {
    if (generators.empty())
        return {};
    const int n = generators.front().degree();
    for (const Permutation& g : generators)
        if (g.degree() != n)
            throw std::invalid_argument("generators act on different index sets");

    std::set<Permutation> group;
    std::deque<Permutation> frontier;
    group.insert(Permutation::identity(n));
    frontier.push_back(Permutation::identity(n));
    while (!frontier.empty()) {
        const Permutation p = frontier.front();
        frontier.pop_front();
        for (const Permutation& g : generators) {
            Permutation q = p.then(g);
            if (group.insert(q).second) {
                if (group.size() > max_size)
                    throw CapExceededError("generated group exceeds the size cap");
                frontier.push_back(std::move(q));
            }
        }
    }
    return {group.begin(), group.end()};
}

std::vector<std::vector<std::size_t>> orbits_of_solutions(
    const std::vector<std::vector<int>>& solutions,
    const std::vector<Permutation>& generators) {
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < solutions.size(); ++i)
        index.emplace(solutions[i], i);

    std::vector<char> seen(solutions.size(), 0);
    std::vector<std::vector<std::size_t>> orbits;
    for (std::size_t start = 0; start < solutions.size(); ++start) {
        if (seen[start])
            continue;
        std::vector<std::size_t> orbit;
        std::deque<std::size_t> frontier{start};
        seen[start] = 1;
        while (!frontier.empty()) {
            const std::size_t cur = frontier.front();
            frontier.pop_front();
            orbit.push_back(cur);
            for (const Permutation& g : generators) {
                const std::vector<int> img = apply_symmetry(g, solutions[cur]);
                auto it = index.find(img);
                if (it == index.end()) {
                    std::ostringstream os;
                    os << "generator maps solution " << cur + 1
                       << " outside the solution set";
                    throw std::invalid_argument(os.str());
                }
                if (!seen[it->second]) {
                    seen[it->second] = 1;
                    frontier.push_back(it->second);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

} // namespace lexenum
