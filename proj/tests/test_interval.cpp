#include <doctest.h>

#include "biprox/catalog.hpp"
#include "biprox/interval.hpp"

using namespace biprox;

namespace {

bool brute_h_cyclic(const GroupPtr& g, const Subgroup& h) {
    for (int x = 0; x < g->order(); ++x) {
        auto gens = h.elements();
        gens.push_back(x);
        if (subgroup_generated(g, gens).order() == g->order()) return true;
    }
    return false;
}

std::vector<Inclusion> sample() {
    std::vector<Inclusion> out;
    for (const auto& name : {"S3", "S4", "Q8", "A4", "D4", "D6", "Z2^3", "Z12", "Dic3", "SL23"}) {
        GroupPtr g = parse_group_spec(name);
        for (const auto& h : conjugacy_class_representatives(all_subgroups(g), whole_group(g))) out.emplace_back(g, h);
    }
    return out;
}

}  // namespace

TEST_CASE("H-cyclicity agrees with brute force") {
    for (const auto& inc : sample()) {
        auto w = is_H_cyclic(inc);
        CHECK(w.has_value() == brute_h_cyclic(inc.group(), inc.subgroup()));
        if (w) {
            auto gens = inc.subgroup().elements();
            gens.push_back(*w);
            CHECK(subgroup_generated(inc.group(), gens).order() == inc.group()->order());
        }
    }
}

TEST_CASE("distributive intervals are H-cyclic") {
    int distributive = 0;
    for (const auto& inc : sample()) {
        auto r = ore_verify(inc);
        CHECK(r.distributive == is_distributive(inc.interval()));
        if (r.distributive) {
            ++distributive;
            CHECK(r.h_cyclic);
        }
    }
    CHECK(distributive > 0);
}

TEST_CASE("dual conditions") {
    GroupPtr s3 = parse_group_spec("S3");
    auto c = dual_ore_conditions(Inclusion(s3, trivial_subgroup(s3)));
    // minimal overgroups of 1 in S3: three of order 2, one of order 3
    CHECK(c.sum_value == Rational(11, 6));
    CHECK(c.cond_sum);
    CHECK(!c.cond_normal);
    GroupPtr z6 = parse_group_spec("Z6");
    auto z = dual_ore_conditions(Inclusion(z6, trivial_subgroup(z6)));
    CHECK(z.cond_normal);
    CHECK(z.sum_value == Rational(5, 6));
}

TEST_CASE("equivalence of inclusions") {
    GroupPtr s4 = parse_group_spec("S4");
    Subgroup a = parse_subgroup_spec(s4, "(1,2)"), a2 = parse_subgroup_spec(s4, "(3,4)");
    Subgroup b = parse_subgroup_spec(s4, "(1,2)(3,4)");
    CHECK(inclusions_equivalent(Inclusion(s4, a), Inclusion(s4, a2)));
    CHECK(!inclusions_equivalent(Inclusion(s4, a), Inclusion(s4, b)));
    // H normal: G/H with trivial subgroup
    GroupPtr z6 = parse_group_spec("Z6"), z3 = parse_group_spec("Z3");
    Subgroup two = subgroup_generated(z6, std::vector<int>{});
    for (const auto& k : all_subgroups(z6))
        if (k.order() == 2) two = k;
    CHECK(inclusions_equivalent(Inclusion(z6, two), Inclusion(z3, trivial_subgroup(z3))));
    CHECK(!inclusions_equivalent(Inclusion(z6, trivial_subgroup(z6)), Inclusion(z3, trivial_subgroup(z3))));
}

TEST_CASE("linear primitivity of groups") {
    // a faithful irreducible representation exists; abelian groups qualify exactly when cyclic
    for (const auto& name : {"S3", "S4", "Q8", "D4", "A4", "Z6", "Z12", "Dic3", "SL23", "D6"})
        CHECK(is_linearly_primitive_group(parse_group_spec(name)));
    for (const auto& name : {"Z2^2", "Z2^3"}) CHECK(!is_linearly_primitive_group(parse_group_spec(name)));
}

TEST_CASE("linearly primitive witness has stabilizer H") {
    GroupPtr s4 = parse_group_spec("S4");
    Subgroup a = parse_subgroup_spec(s4, "(1,2)");
    CHECK(is_linearly_primitive_inclusion(Inclusion(s4, a)).has_value());
    CHECK(!is_linearly_primitive_inclusion(Inclusion(s4, parse_subgroup_spec(s4, "(1,2)(3,4)"))).has_value());
}

TEST_CASE("left stabilizer") {
    GroupPtr s3 = parse_group_spec("S3");
    CVector q(6, 0.0);
    q[0] = 1;
    CHECK(left_stabilizer(s3, q).order() == 1);
    CVector all(6, 1.0);
    CHECK(left_stabilizer(s3, all).order() == 6);
}
