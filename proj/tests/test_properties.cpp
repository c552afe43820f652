#include <doctest.h>

#include "biprox/catalog.hpp"
#include "biprox/errors.hpp"
#include "biprox/interval.hpp"
#include "biprox/properties.hpp"

using namespace biprox;

namespace {

ContextPtr primal(const std::string& g, const std::string& h = "trivial") {
    GroupPtr gp = parse_group_spec(g);
    return BoxContext::primal(gp, parse_subgroup_spec(gp, h));
}
ContextPtr dual(const std::string& g, const std::string& h = "trivial") {
    GroupPtr gp = parse_group_spec(g);
    return BoxContext::dual(gp, parse_subgroup_spec(gp, h));
}

std::vector<ContextPtr> corpus() {
    std::vector<ContextPtr> out;
    for (const auto& name : {"S3", "S4", "Q8", "A4", "D4", "Z2^3", "Z12", "Dic3"}) {
        GroupPtr g = parse_group_spec(name);
        for (const auto& h : conjugacy_class_representatives(all_subgroups(g), whole_group(g))) {
            if (h.order() == g->order()) continue;
            out.push_back(BoxContext::primal(g, h));
            out.push_back(BoxContext::dual(g, h));
        }
    }
    return out;
}

// Same sum read off the subgroup interval: minimal overgroups on the primal side,
// maximal subgroups on the dual side.
Rational sum_from_groups(const ContextPtr& ctx) {
    Rational s(0);
    const int h = ctx->bottom().order(), t = ctx->top().order();
    if (ctx->side() == Side::primal) {
        for (const auto& k : minimal_overgroups(ctx->bottom(), ctx->top())) s += Rational(h, k.order());
    } else {
        for (const auto& k : maximal_subgroups_over(ctx->bottom(), ctx->top())) s += Rational(k.order(), t);
    }
    return s;
}

}  // namespace

TEST_CASE("cyclic groups give cyclic contexts") {
    for (int n : {2, 6, 12, 30}) {
        auto p = primal("Z" + std::to_string(n)), d = dual("Z" + std::to_string(n));
        CHECK(is_cyclic(p));
        CHECK(is_cyclic(d));
        CHECK(is_distributive(p));
        CHECK(is_dedekind(p));
        CHECK(is_w_cyclic(p).has_value());
        CHECK(is_w_cyclic(d).has_value());
    }
}

TEST_CASE("Klein four group") {
    auto p = primal("Z2^2"), d = dual("Z2^2");
    CHECK(!is_distributive(p));
    CHECK(!is_cyclic(p));
    CHECK(!is_w_cyclic(p).has_value());
    CHECK(!is_w_cyclic(d).has_value());
    CHECK(is_dedekind(p));
}

TEST_CASE("S3") {
    auto p = primal("S3"), d = dual("S3");
    CHECK(is_w_cyclic(p).has_value());
    CHECK(!is_cyclic(p));
    CHECK(!w_plus_cyclic(p));
    CHECK(sum_bound(p) == Rational(11, 6));
    CHECK(sum_bound(d) == Rational(3, 2));
    CHECK(maximal_biprojections(p).size() == 4);
    CHECK(!is_dedekind(p));
}

TEST_CASE("sum bound matches the subgroup interval") {
    for (const auto& ctx : corpus()) CHECK(sum_bound(ctx) == sum_from_groups(ctx));
}

TEST_CASE("Z and ZZ on S4 modulo two-element subgroups") {
    auto a = primal("S4", "(1,2)"), b = primal("S4", "(1,2)(3,4)");
    CHECK(property_Z(a));
    CHECK(!property_ZZ(a));
    CHECK(!property_Z(b));
    auto w = find_zz_witness(dual("S4", "(1,2)"));
    REQUIRE(w.has_value());
    CHECK(is_coproduct_central(w->x));
    CHECK(is_coproduct_central(w->y));
    CHECK(!is_coproduct_central(mul(w->x, w->y)));
}

TEST_CASE("Dedekind means every biprojection is normal") {
    for (const auto& ctx : corpus()) {
        bool all = true;
        for (const auto& k : ctx->interval()) all = all && is_normal_intermediate(ctx->bottom(), k, ctx->top());
        CHECK(is_dedekind(ctx) == all);
    }
}

TEST_CASE("implications hold across the corpus") {
    for (const auto& ctx : corpus()) {
        for (const auto& i : verify_theorems(ctx, true)) {
            INFO(ctx->label() << ": " << i.name);
            CHECK(i.holds());
        }
    }
}

TEST_CASE("w-cyclicity against group-theoretic criteria") {
    for (const auto& ctx : corpus()) {
        Inclusion inc(ctx->group(), ctx->bottom());
        const bool w = is_w_cyclic(ctx).has_value();
        if (ctx->side() == Side::primal)
            CHECK(w == is_linearly_primitive_inclusion(inc).has_value());
        else
            CHECK(w == is_H_cyclic(inc).has_value());
    }
}

TEST_CASE("two routes to left and right cyclicity agree") {
    for (const auto& ctx : {primal("S3"), primal("S4", "(1,2)"), dual("S4"), primal("Q8"), dual("A4")})
        for (const auto& k : ctx->interval()) {
            auto a = lw_rw_cyclic(ctx, k), b = lw_rw_cyclic_direct(ctx, k);
            CHECK(a.lw == b.lw);
            CHECK(a.rw == b.rw);
        }
}

TEST_CASE("lengths") {
    CHECK(lengths(dual("S3"), {"cl"})["cl"] == 2);
    CHECK(lengths(primal("S3"), {"wcl"})["wcl"] == 1);
    CHECK(lengths(primal("S4"), {"dl"})["dl"] == 2);
    CHECK(lengths(primal("Z12"), {"cl"})["cl"] == 1);
    for (const auto& ctx : {primal("S3"), dual("S4"), primal("A4"), primal("Q8"), dual("D4")}) {
        auto l = lengths(ctx, {"wcl", "cl", "tcl", "h"});
        CHECK(wcl_by_chains(ctx) == l["wcl"]);
        CHECK(l["h"] == height(biprojection_lattice(ctx)));
        if (l["wcl"] && l["tcl"]) CHECK(*l["wcl"] <= *l["tcl"]);
        if (l["tcl"] && l["cl"]) CHECK(*l["tcl"] <= *l["cl"]);
    }
    CHECK_THROWS_AS(lengths(primal("S3"), {"nonsense"}), ParseError);
}

TEST_CASE("classification report matches direct calls") {
    for (const auto& ctx : {primal("S3"), dual("S4", "(1,2)"), primal("Q8"), primal("Z30")}) {
        auto r = classify(ctx);
        CHECK(r.cyclic == is_cyclic(ctx));
        CHECK(r.w_cyclic == is_w_cyclic(ctx).has_value());
        CHECK(r.Z == property_Z(ctx));
        CHECK(r.sum_bound == sum_bound(ctx));
        CHECK(r.lattice_size == static_cast<int>(ctx->interval().size()));
        CHECK(r.generated.size() == minimal_central_projections(ctx).size());
    }
}

TEST_CASE("sub-contexts require nested nodes") {
    auto ctx = primal("S3");
    auto cd = central_data(ctx);
    const auto& l = cd.lattice;
    auto atoms = l.atoms();
    REQUIRE(atoms.size() >= 2);
    CHECK_THROWS_AS(sub_context(ctx, cd.nodes, atoms[0], atoms[1]), NotNested);
    auto sub = sub_context(ctx, cd.nodes, l.bottom(), atoms[0]);
    CHECK(ctx->index() % sub->index() == 0);
}
