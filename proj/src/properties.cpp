#include "biprox/properties.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace biprox {

std::string to_string(Tri t) {
    switch (t) {
        case Tri::no: return "false";
        case Tri::yes: return "true";
        default: return "not_determined";
    }
}

int node_index(const std::vector<Subgroup>& nodes, const Subgroup& k) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == k) return static_cast<int>(i);
    throw NotABiprojection("subgroup " + subgroup_label(k) + " is not in the interval");
}

CentralData central_data(const ContextPtr& ctx) {
    CentralData cd;
    cd.lattice = biprojection_lattice(ctx, &cd.nodes);
    cd.central = minimal_central_projections(ctx);
    for (const auto& p : cd.central) cd.generated.push_back(node_index(cd.nodes, generate_biprojection(p).subgroup));
    return cd;
}

ContextPtr sub_context(const ContextPtr& ctx, const std::vector<Subgroup>& nodes, int a, int b) {
    const Subgroup& x = nodes[a];
    const Subgroup& y = nodes[b];
    const bool xy = x.subset_of(y);
    if (!xy && !y.subset_of(x)) throw NotNested("lattice elements are not comparable");
    return BoxContext::make(ctx->group(), xy ? y : x, xy ? x : y, ctx->side(), ctx->seed());
}

namespace {

std::mt19937_64 make_rng(const ContextPtr& ctx, std::uint64_t salt) {
    return std::mt19937_64(ctx->seed() * 0x9e3779b97f4a7c15ULL + salt);
}

std::optional<WCyclicWitness> w_cyclic_from(const ContextPtr& ctx, const CentralData& cd) {
    const int top = cd.lattice.top();
    for (std::size_t i = 0; i < cd.central.size(); ++i) {
        if (cd.generated[i] != top) continue;
        auto rng = make_rng(ctx, i);
        for (int attempt = 0; attempt < 8; ++attempt) {
            BoxElement v = random_minimal_projection(ctx, rng, static_cast<int>(i));
            if (node_index(cd.nodes, generate_biprojection(v).subgroup) == top)
                return WCyclicWitness{static_cast<int>(i), cd.central[i], v};
        }
        throw TheoremViolation("no minimal projection under a generating central projection generates id");
    }
    // no central projection generates id; minimal projections cannot either, test one per block anyway
    for (std::size_t i = 0; i < cd.central.size(); ++i) {
        auto rng = make_rng(ctx, 1000 + i);
        BoxElement v = random_minimal_projection(ctx, rng, static_cast<int>(i));
        if (node_index(cd.nodes, generate_biprojection(v).subgroup) == top)
            throw TheoremViolation("minimal projection generates more than its central support");
    }
    return std::nullopt;
}

bool dedekind_between(const Subgroup& bottom, const Subgroup& top, const std::vector<Subgroup>& ks) {
    for (const auto& k : ks)
        if (!is_normal_intermediate(bottom, k, top)) return false;
    return true;
}

// Cyclicity of P(a < b) decided on the lattice and by double cosets.
bool cyclic_step(const FiniteLattice& l, const std::vector<Subgroup>& nodes, int a, int b) {
    std::vector<int> idx;
    FiniteLattice sub = l.interval(a, b, &idx);
    if (!is_distributive(sub)) return false;
    const Subgroup& x = nodes[a];
    const Subgroup& y = nodes[b];
    const bool xy = x.subset_of(y);
    std::vector<Subgroup> ks;
    for (int i : idx) ks.push_back(nodes[i]);
    return dedekind_between(xy ? x : y, xy ? y : x, ks);
}

bool z_from(const ContextPtr& ctx, const CentralData& cd) {
    std::vector<int> seen;
    for (int g : cd.generated) {
        if (std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
        seen.push_back(g);
        if (!is_central(element_bK(ctx, cd.nodes[g]))) return false;
    }
    return true;
}

bool f2_from(const CentralData& cd) {
    const auto& l = cd.lattice;
    const auto& g = cd.generated;
    for (int p : g)
        for (int q : g) {
            const int pq = l.join(p, q);
            bool found = false;
            for (int r : g)
                if (l.leq(pq, l.join(p, r)) && l.leq(pq, l.join(r, q))) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
    return true;
}

std::optional<int> wcl_from(const CentralData& cd) {
    std::vector<int> g = cd.generated;
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    const auto& l = cd.lattice;
    const int n = static_cast<int>(g.size());
    for (int size = 1; size <= std::min(4, n); ++size) {
        std::vector<int> pick(size);
        std::function<bool(int, int, int)> rec = [&](int pos, int start, int acc) -> bool {
            if (pos == size) return acc == l.top();
            for (int i = start; i < n; ++i)
                if (rec(pos + 1, i + 1, l.join(acc, g[i]))) return true;
            return false;
        };
        if (rec(0, 0, l.bottom())) return size;
    }
    return std::nullopt;
}

Rational sum_from(const ContextPtr& ctx, const std::vector<Subgroup>& maximal) {
    Rational s{0};
    for (const auto& k : maximal) {
        if (ctx->side() == Side::primal)
            s += Rational(ctx->bottom().order(), k.order());
        else
            s += Rational(k.order(), ctx->top().order());
    }
    return s;
}

std::vector<Subgroup> maximal_from(const CentralData& cd) {
    std::vector<Subgroup> out;
    for (int c : cd.lattice.coatoms()) out.push_back(cd.nodes[c]);
    return out;
}

bool w_plus_from(const ContextPtr& ctx, const std::vector<Subgroup>& maximal) {
    if (maximal.empty()) return true;
    BoxElement s = BoxElement::zero(ctx);
    for (const auto& k : maximal) s += element_bK(ctx, k);
    return projection_rank(range_projection(s)) < projection_rank(id(ctx));
}

// Shortest chain bottom = c_0 < ... < c_l = top with pred on every step.
std::optional<int> shortest_chain(const FiniteLattice& l, const std::function<bool(int, int)>& pred) {
    const int n = l.size();
    std::vector<int> dist(n, -1);
    std::deque<int> queue{l.bottom()};
    dist[l.bottom()] = 0;
    while (!queue.empty()) {
        const int a = queue.front();
        queue.pop_front();
        if (a == l.top()) return dist[a];
        for (int b = 0; b < n; ++b)
            if (dist[b] < 0 && b != a && l.leq(a, b) && pred(a, b)) {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
    }
    return std::nullopt;
}

}  // namespace

std::optional<WCyclicWitness> is_w_cyclic(const ContextPtr& ctx) { return w_cyclic_from(ctx, central_data(ctx)); }

bool is_distributive(const ContextPtr& ctx) { return is_distributive(biprojection_lattice(ctx)); }

bool is_dedekind(const ContextPtr& ctx) { return dedekind_between(ctx->bottom(), ctx->top(), ctx->interval()); }

bool is_cyclic(const ContextPtr& ctx) { return is_dedekind(ctx) && is_distributive(ctx); }

LwRw lw_rw_cyclic(const ContextPtr& ctx, const Subgroup& k) {
    return {is_w_cyclic(planar_lower(ctx, k)).has_value(), is_w_cyclic(planar_upper(ctx, k)).has_value()};
}

LwRw lw_rw_cyclic_direct(const ContextPtr& ctx, const Subgroup& k) {
    BoxElement b = element_bK(ctx, k);
    BoxElement one = id(ctx);
    const auto& r = ctx->realization();
    auto bblocks = to_blocks(b);
    auto rng = make_rng(ctx, 77);
    std::normal_distribution<double> nd;
    LwRw out;
    for (std::size_t i = 0; i < r.block_dims.size(); ++i) {
        const int mi = r.block_dims[i];
        // lw: a generic unit vector in the range of b on block i
        const CMatrix& pb = bblocks[i];
        cplx tr = 0;
        for (int a = 0; a < mi; ++a) tr += pb(a, a);
        if (!out.lw && std::real(tr) > 0.5) {
            CVector xi(mi);
            for (auto& v : xi) v = cplx(nd(rng), nd(rng));
            xi = pb * xi;
            const double nx = norm(xi);
            std::vector<CMatrix> blocks;
            for (std::size_t j = 0; j < r.block_dims.size(); ++j) {
                CMatrix p(r.block_dims[j], r.block_dims[j]);
                if (j == i)
                    for (int a = 0; a < mi; ++a)
                        for (int c = 0; c < mi; ++c) p(a, c) = xi[a] * std::conj(xi[c]) / (nx * nx);
                blocks.push_back(std::move(p));
            }
            BoxElement u = from_blocks(ctx, blocks);
            if (generate_biprojection(u).subgroup == k) out.lw = true;
        }
        if (!out.rw) {
            BoxElement u = random_minimal_projection(ctx, rng, static_cast<int>(i));
            auto g = generate_biprojection(std::vector<BoxElement>{u, b}).subgroup;
            if (distance(element_bK(ctx, g), one) < 1e-9) out.rw = true;
        }
    }
    return out;
}

bool property_Z(const ContextPtr& ctx) { return z_from(ctx, central_data(ctx)); }

bool property_ZZ(const ContextPtr& ctx) {
    auto zs = center_basis(ctx);
    for (const auto& a : zs)
        for (const auto& b : zs)
            if (!is_central(coproduct(a, b))) return false;
    return true;
}

Tri property_Z_tilde(const ContextPtr& ctx, int max_pairs) {
    std::vector<Subgroup> nodes;
    FiniteLattice l = biprojection_lattice(ctx, &nodes);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < l.size(); ++a)
        for (int b = 0; b < l.size(); ++b)
            if (a != b && l.leq(a, b)) pairs.emplace_back(a, b);
    if (static_cast<int>(pairs.size()) > max_pairs) return Tri::not_determined;
    for (auto [a, b] : pairs)
        if (!property_Z(sub_context(ctx, nodes, a, b))) return Tri::no;
    return Tri::yes;
}

bool property_F2(const ContextPtr& ctx) { return f2_from(central_data(ctx)); }

std::optional<ZZWitness> find_zz_witness(const ContextPtr& ctx) {
    const int d = ctx->dim();
    if (d <= 12) {
        std::vector<BoxElement> central;
        std::vector<std::vector<int>> sets;
        for (int mask = 1; mask < (1 << d); ++mask) {
            BoxElement x = BoxElement::zero(ctx);
            std::vector<int> s;
            for (int k = 0; k < d; ++k)
                if (mask >> k & 1) {
                    x += coset_indicator(ctx, k);
                    s.push_back(k);
                }
            if (is_coproduct_central(x)) {
                central.push_back(x);
                sets.push_back(s);
            }
        }
        // smallest combined support first
        std::optional<ZZWitness> best;
        std::size_t best_size = 0;
        for (std::size_t i = 0; i < central.size(); ++i)
            for (std::size_t j = 0; j < central.size(); ++j) {
                const std::size_t size = sets[i].size() + sets[j].size();
                if (best && size >= best_size) continue;
                if (!is_coproduct_central(mul(central[i], central[j]))) {
                    best = ZZWitness{central[i], central[j], sets[i], sets[j]};
                    best_size = size;
                }
            }
        if (best) return best;
    }
    auto basis = coproduct_center_basis(ctx);
    for (const auto& x : basis)
        for (const auto& y : basis)
            if (!is_coproduct_central(mul(x, y))) return ZZWitness{x, y, {}, {}};
    return std::nullopt;
}

std::vector<Subgroup> maximal_biprojections(const ContextPtr& ctx) {
    std::vector<Subgroup> nodes;
    FiniteLattice l = biprojection_lattice(ctx, &nodes);
    std::vector<Subgroup> out;
    for (int c : l.coatoms()) out.push_back(nodes[c]);
    return out;
}

Rational sum_bound(const ContextPtr& ctx) { return sum_from(ctx, maximal_biprojections(ctx)); }

bool w_plus_cyclic(const ContextPtr& ctx) { return w_plus_from(ctx, maximal_biprojections(ctx)); }

// ------------------------------------------------------------------ lengths

namespace {

std::optional<int> parse_bound(const std::string& name, const std::string& prefix) {
    if (name.size() <= prefix.size() + 1 || name.compare(0, prefix.size(), prefix) != 0 || name.back() != 'l')
        return std::nullopt;
    const std::string mid = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    if (mid.empty() || !std::all_of(mid.begin(), mid.end(), ::isdigit)) return std::nullopt;
    return std::stoi(mid);
}

std::optional<int> chain_length(const ContextPtr& ctx, const CentralData& cd, const std::string& name) {
    const auto& l = cd.lattice;
    const auto& nodes = cd.nodes;
    std::map<std::pair<int, int>, bool> memo;
    auto memoized = [&](std::function<bool(int, int)> f) {
        return [&memo, f](int a, int b) {
            auto key = std::make_pair(a, b);
            if (auto it = memo.find(key); it != memo.end()) return it->second;
            return memo[key] = f(a, b);
        };
    };
    auto top_part = [&](int a, int b) {
        std::vector<int> idx, tidx;
        FiniteLattice sub = l.interval(a, b, &idx);
        FiniteLattice t = top_interval(sub, &tidx);
        return std::make_tuple(t, idx[tidx[t.bottom()]]);
    };
    auto bottom_part = [&](int a, int b) {
        std::vector<int> idx, bidx;
        FiniteLattice sub = l.interval(a, b, &idx);
        FiniteLattice t = bottom_interval(sub, &bidx);
        return std::make_tuple(t, idx[bidx[t.top()]]);
    };
    auto boolean_at_most = [](const FiniteLattice& t, int n) {
        auto r = boolean_rank(t);
        return r.has_value() && (n < 0 || *r <= n);
    };

    if (name == "cl") return shortest_chain(l, memoized([&](int a, int b) { return cyclic_step(l, nodes, a, b); }));
    if (name == "dl")
        return shortest_chain(l, memoized([&](int a, int b) { return is_distributive(l.interval(a, b)); }));
    if (name == "tcl")
        return shortest_chain(l, memoized([&](int a, int b) {
                                  auto [t, bb] = top_part(a, b);
                                  return cyclic_step(l, nodes, bb, b);
                              }));
    if (name == "bcl")
        return shortest_chain(l, memoized([&](int a, int b) {
                                  auto [t, bb] = bottom_part(a, b);
                                  return cyclic_step(l, nodes, a, bb);
                              }));
    if (name == "tbl")
        return shortest_chain(l, memoized([&](int a, int b) { return boolean_at_most(std::get<0>(top_part(a, b)), -1); }));
    if (name == "bbl")
        return shortest_chain(l, memoized([&](int a, int b) {
                                  return boolean_at_most(std::get<0>(bottom_part(a, b)), -1);
                              }));
    if (auto n = parse_bound(name, "tb"))
        return shortest_chain(l, memoized([&, n](int a, int b) { return boolean_at_most(std::get<0>(top_part(a, b)), *n); }));
    if (auto n = parse_bound(name, "bb"))
        return shortest_chain(l, memoized([&, n](int a, int b) {
                                  return boolean_at_most(std::get<0>(bottom_part(a, b)), *n);
                              }));
    if (name == "wcl") return wcl_from(cd);
    if (name == "h") return height(l);
    if (name == "wcl_chain")
        return shortest_chain(l, memoized([&](int a, int b) {
                                  return is_w_cyclic(sub_context(ctx, nodes, a, b)).has_value();
                              }));
    throw ParseError("unknown length '" + name + "'");
}

}  // namespace

LengthMap lengths(const ContextPtr& ctx, const std::set<std::string>& which) {
    CentralData cd = central_data(ctx);
    LengthMap out;
    for (const auto& name : which) out[name] = chain_length(ctx, cd, name);
    return out;
}

std::optional<int> wcl_by_chains(const ContextPtr& ctx) { return chain_length(ctx, central_data(ctx), "wcl_chain"); }

// ------------------------------------------------------------------ theorems

std::vector<Implication> verify_theorems(const ContextPtr& ctx, bool with_lengths) {
    CentralData cd = central_data(ctx);
    const auto& l = cd.lattice;
    const bool w = w_cyclic_from(ctx, cd).has_value();
    const bool distributive = is_distributive(l);
    const bool dedekind = is_dedekind(ctx);
    const auto maximal = maximal_from(cd);
    const Rational sum = sum_from(ctx, maximal);
    const bool w_plus = w_plus_from(ctx, maximal);
    const auto brank = boolean_rank(l);

    bool all_central = true;
    for (const auto& k : cd.nodes)
        if (!is_central(element_bK(ctx, k))) {
            all_central = false;
            break;
        }

    std::vector<int> tidx;
    FiniteLattice t = top_interval(l, &tidx);
    const int tb = tidx[t.bottom()];
    const bool top_w = is_w_cyclic(sub_context(ctx, cd.nodes, tb, l.top())).has_value();

    std::vector<Implication> out;
    out.push_back({"cyclic => w-cyclic", dedekind && distributive, tri(w)});
    out.push_back({"central distributive => w-cyclic", all_central && distributive, tri(w)});
    out.push_back({"distributive, sum <= 2 => w-cyclic", distributive && sum <= Rational(2), tri(w)});
    out.push_back({"sum <= 1 => w-cyclic", sum <= Rational(1), tri(w)});
    out.push_back({"at most two maximal => w-cyclic", maximal.size() <= 2, tri(w)});
    out.push_back({"boolean rank <= 4 => w-cyclic", brank.has_value() && *brank <= 4, tri(w)});
    out.push_back({"top w-cyclic => w-cyclic", top_w, tri(w)});
    out.push_back({"w+ => w-cyclic", w_plus, tri(w)});
    out.push_back({"Dedekind => (w+ <=> w-cyclic)", dedekind, tri(w_plus == w)});
    out.push_back({"ZZ => Z", property_ZZ(ctx), tri(z_from(ctx, cd))});
    out.push_back({"Dedekind => Z~", dedekind, dedekind ? property_Z_tilde(ctx) : Tri::not_determined});
    if (with_lengths) {
        LengthMap m;
        for (const char* n : {"wcl", "tcl", "cl", "tb4l"}) m[n] = chain_length(ctx, cd, n);
        auto le = [](const std::optional<int>& a, const std::optional<int>& b) {
            if (!a || !b) return Tri::not_determined;
            return tri(*a <= *b);
        };
        out.push_back({"wcl <= tcl", true, le(m["wcl"], m["tcl"])});
        out.push_back({"tcl <= cl", true, le(m["tcl"], m["cl"])});
        out.push_back({"wcl <= tb4l", true, le(m["wcl"], m["tb4l"])});
    }
    return out;
}

ClassificationReport classify(const ContextPtr& ctx, const ClassifyOptions& opt) {
    CentralData cd = central_data(ctx);
    ClassificationReport r;
    r.label = ctx->label();
    r.side = ctx->side();
    r.index = ctx->index();
    r.lattice_size = cd.lattice.size();
    r.distributive = is_distributive(cd.lattice);
    r.dedekind = is_dedekind(ctx);
    r.cyclic = r.distributive && r.dedekind;
    auto w = w_cyclic_from(ctx, cd);
    r.w_cyclic = w.has_value();
    if (w) r.w_cyclic_block = w->block;
    if (r.cyclic && !r.w_cyclic) throw TheoremViolation(r.label + " is cyclic but not w-cyclic");
    const auto maximal = maximal_from(cd);
    for (const auto& k : maximal) r.maximal.push_back(subgroup_label(k));
    r.sum_bound = sum_from(ctx, maximal);
    r.w_plus_cyclic = w_plus_from(ctx, maximal);
    r.Z = z_from(ctx, cd);
    r.ZZ = property_ZZ(ctx);
    r.F2 = f2_from(cd);
    r.Z_tilde = opt.z_tilde ? property_Z_tilde(ctx) : Tri::not_determined;
    r.boolean_rank = boolean_rank(cd.lattice);
    for (int g : cd.generated) r.generated.push_back(subgroup_label(cd.nodes[g]));
    for (const auto& name : opt.lengths) r.lengths[name] = chain_length(ctx, cd, name);
    return r;
}

}  // namespace biprox
