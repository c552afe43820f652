#include "biprox/interval.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include "biprox/boxalgebra.hpp"

namespace biprox {

struct Inclusion::Cache {
    std::once_flag once;
    FiniteLattice lattice;
    std::vector<Subgroup> nodes;
};

Inclusion::Inclusion(GroupPtr g, Subgroup h) : g_(std::move(g)), h_(std::move(h)), cache_(std::make_shared<Cache>()) {
    if (h_.parent != g_) throw NotNested("subgroup belongs to another group");
}

const FiniteLattice& Inclusion::interval() const {
    std::call_once(cache_->once, [this] { cache_->lattice = from_subgroups(g_, h_, &cache_->nodes); });
    return cache_->lattice;
}

const std::vector<Subgroup>& Inclusion::nodes() const {
    interval();
    return cache_->nodes;
}

std::optional<int> is_H_cyclic(const Inclusion& inc) {
    const auto& g = inc.group();
    auto seed = generating_set(inc.subgroup());
    for (int x = 0; x < g->order(); ++x) {
        auto s = seed;
        s.push_back(x);
        if (subgroup_generated(g, s).order() == g->order()) return x;
    }
    return std::nullopt;
}

OreReport ore_verify(const Inclusion& inc) {
    OreReport r;
    r.distributive = is_distributive(inc.interval());
    r.witness = is_H_cyclic(inc);
    r.h_cyclic = r.witness.has_value();
    if (r.distributive && !r.h_cyclic)
        throw TheoremViolation("distributive interval [" + subgroup_label(inc.subgroup()) + ", G] is not H-cyclic");
    return r;
}

DualOreConditions dual_ore_conditions(const Inclusion& inc) {
    DualOreConditions c;
    c.cond_normal = true;
    const Subgroup top = inc.top();
    for (const auto& k : inc.nodes())
        if (!is_normal_intermediate(inc.subgroup(), k, top)) {
            c.cond_normal = false;
            break;
        }
    for (const auto& k : minimal_overgroups(inc.subgroup(), top))
        c.sum_value += Rational(inc.subgroup().order(), k.order());
    c.cond_sum = c.sum_value <= Rational(2);
    return c;
}

// ------------------------------------------------------------- equivalence

namespace {

struct Pair {
    GroupPtr q;
    Subgroup s;
};

Pair core_quotient(const Inclusion& inc, int cap) {
    Subgroup n = core(inc.subgroup());
    Quotient qt = quotient(inc.group(), n, cap);
    std::vector<int> seed;
    for (int x : inc.subgroup().elements()) seed.push_back(qt.image[x]);
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
    return {qt.group, subgroup_generated(qt.group, seed)};
}

std::vector<long long> invariants(const Pair& p) {
    std::vector<long long> v{p.q->order(), p.q->is_abelian() ? 1 : 0, center(p.q).order(),
                             derived_subgroup(p.q).order(), p.s.order()};
    for (int o : element_order_multiset(whole_group(p.q))) v.push_back(o);
    v.push_back(-1);
    for (int o : element_order_multiset(p.s)) v.push_back(o);
    return v;
}

// Extends gens[i] -> img[i] (i < k) to the subgroup they generate; false on conflict.
bool extend(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& gens, const std::vector<int>& img,
            std::size_t k, std::vector<int>& map) {
    map.assign(a.order(), -1);
    std::vector<int> used(b.order(), 0);
    map[0] = 0;
    used[0] = 1;
    std::vector<int> queue{0};
    for (std::size_t h = 0; h < queue.size(); ++h) {
        const int x = queue[h];
        for (std::size_t i = 0; i < k; ++i) {
            const int y = a.mul(x, gens[i]);
            const int fy = b.mul(map[x], img[i]);
            if (map[y] >= 0) {
                if (map[y] != fy) return false;
                continue;
            }
            if (used[fy]) return false;
            map[y] = fy;
            used[fy] = 1;
            queue.push_back(y);
        }
    }
    return true;
}

bool pairs_isomorphic(const Pair& p1, const Pair& p2) {
    if (invariants(p1) != invariants(p2)) return false;
    const auto& a = *p1.q;
    const auto& b = *p2.q;
    if (a.order() == 1) return true;
    const auto gens = generating_set(whole_group(p1.q));
    std::vector<std::vector<int>> cands(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (int y = 0; y < b.order(); ++y)
            if (b.element_order(y) == a.element_order(gens[i])) cands[i].push_back(y);
    std::vector<int> img(gens.size());
    std::vector<int> map;
    std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
        if (i == gens.size()) {
            if (!extend(a, b, gens, img, i, map)) return false;
            if (std::count(map.begin(), map.end(), -1) != 0) return false;
            for (int x : p1.s.elements())
                if (!p2.s.contains(map[x])) return false;
            return true;
        }
        for (int y : cands[i]) {
            img[i] = y;
            if (extend(a, b, gens, img, i + 1, map) && dfs(i + 1)) return true;
        }
        return false;
    };
    return dfs(0);
}

}  // namespace

bool inclusions_equivalent(const Inclusion& a, const Inclusion& b, int quotient_cap) {
    return pairs_isomorphic(core_quotient(a, quotient_cap), core_quotient(b, quotient_cap));
}

// ------------------------------------------------------- linear primitivity

Subgroup left_stabilizer(const GroupPtr& g, const CVector& q, double tol) {
    double scale = 0;
    for (const auto& v : q) scale = std::max(scale, std::abs(v));
    ElementSet s(g->order());
    for (int x = 0; x < g->order(); ++x) {
        bool fixed = true;
        for (int k = 0; k < g->order() && fixed; ++k)
            if (std::abs(q[g->mul(g->inv(x), k)] - q[k]) > tol * std::max(1.0, scale)) fixed = false;
        if (fixed) s.insert(x);
    }
    return {g, s};
}

std::optional<int> is_linearly_primitive_inclusion(const Inclusion& inc, std::uint64_t seed) {
    auto ctx = BoxContext::primal(inc.group(), inc.subgroup(), seed);
    const auto& r = ctx->realization();
    for (std::size_t i = 0; i < r.central_projections.size(); ++i)
        if (left_stabilizer(inc.group(), r.central_projections[i]) == inc.subgroup()) return static_cast<int>(i);
    return std::nullopt;
}

bool is_linearly_primitive_group(const GroupPtr& g, std::uint64_t seed) {
    return is_linearly_primitive_inclusion(Inclusion(g, trivial_subgroup(g)), seed).has_value();
}

}  // namespace biprox
