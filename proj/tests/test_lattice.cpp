#include <doctest.h>

#include <numeric>

#include "biprox/catalog.hpp"
#include "biprox/lattice.hpp"

using namespace biprox;

namespace {

// Divisor lattice of n, ordered by divisibility.
FiniteLattice divisor_lattice(int n, std::vector<int>* divs) {
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) divs->push_back(d);
    const int k = static_cast<int>(divs->size());
    std::vector<std::vector<char>> leq(k, std::vector<char>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) leq[i][j] = (*divs)[j] % (*divs)[i] == 0;
    return FiniteLattice::from_order(leq);
}

void check_lattice_axioms(const FiniteLattice& l) {
    for (int a = 0; a < l.size(); ++a)
        for (int b = 0; b < l.size(); ++b) {
            CHECK(l.meet(a, b) == l.meet(b, a));
            CHECK(l.join(a, b) == l.join(b, a));
            CHECK(l.meet(a, l.join(a, b)) == a);
            CHECK(l.join(a, l.meet(a, b)) == a);
            CHECK(l.leq(a, b) == (l.meet(a, b) == a));
        }
}

}  // namespace

TEST_CASE("subgroup lattice of a cyclic group is the divisor lattice") {
    for (int n : {6, 12, 30, 16}) {
        GroupPtr g = parse_group_spec("Z" + std::to_string(n));
        std::vector<Subgroup> nodes;
        FiniteLattice l = from_subgroups(g, trivial_subgroup(g), &nodes);
        std::vector<int> divs;
        FiniteLattice d = divisor_lattice(n, &divs);
        REQUIRE(l.size() == d.size());
        // match nodes by order, then compare the orders
        std::vector<int> pos(l.size());
        for (int i = 0; i < l.size(); ++i)
            pos[i] = static_cast<int>(std::find(divs.begin(), divs.end(), nodes[i].order()) - divs.begin());
        for (int i = 0; i < l.size(); ++i)
            for (int j = 0; j < l.size(); ++j) CHECK(l.leq(i, j) == d.leq(pos[i], pos[j]));
        CHECK(is_distributive(l));
        CHECK(is_distributive_identity(l));
        check_lattice_axioms(l);
    }
}

TEST_CASE("standard lattices") {
    CHECK(!is_distributive(diamond_lattice()));
    CHECK(is_modular(diamond_lattice()));
    CHECK(!is_modular(pentagon_lattice()));
    CHECK(is_distributive(boolean_lattice(3)));
    CHECK(boolean_rank(boolean_lattice(3)) == 3);
    CHECK(!boolean_rank(chain_lattice(2)).has_value());
    CHECK(height(chain_lattice(4)) == 4);
    CHECK(boolean_lattice(2).size() == 4);
    CHECK(direct_product(chain_lattice(1), chain_lattice(1)).size() == 4);
    CHECK(concatenate(chain_lattice(1), chain_lattice(2)).size() == 4);
    SublatticeWitness w;
    CHECK(!is_distributive(pentagon_lattice(), &w));
    CHECK(w.kind == SublatticeWitness::Kind::N5);
}

TEST_CASE("forbidden sublattice test agrees with the identity test") {
    for (const auto& name : {"S3", "S4", "Q8", "A4", "D6", "Z2^3", "Dic3"}) {
        GroupPtr g = parse_group_spec(name);
        for (const auto& h : conjugacy_class_representatives(all_subgroups(g), whole_group(g))) {
            FiniteLattice l = from_subgroups(g, h);
            CHECK(is_distributive(l) == is_distributive_identity(l));
            CHECK(is_modular(l) == is_modular_identity(l));
            check_lattice_axioms(l);
        }
    }
}

TEST_CASE("reverse, intervals and complements") {
    GroupPtr g = parse_group_spec("Z30");
    FiniteLattice l = from_subgroups(g, trivial_subgroup(g));
    CHECK(boolean_rank(l) == 3);
    FiniteLattice r = l.reverse();
    for (int a = 0; a < l.size(); ++a) {
        for (int b = 0; b < l.size(); ++b) CHECK(l.leq(a, b) == r.leq(b, a));
        const int c = complement(l, a);
        CHECK(l.meet(a, c) == l.bottom());
        CHECK(l.join(a, c) == l.top());
    }
    CHECK(l.atoms().size() == 3);
    CHECK(l.coatoms().size() == 3);
    std::vector<int> map;
    FiniteLattice iv = l.interval(l.atoms()[0], l.top(), &map);
    CHECK(iv.size() == 4);
    for (int i = 0; i < iv.size(); ++i)
        for (int j = 0; j < iv.size(); ++j) CHECK(iv.leq(i, j) == l.leq(map[i], map[j]));
}

TEST_CASE("dot output") {
    std::string dot = to_dot(diamond_lattice(), "m3");
    CHECK(dot.find("digraph \"m3\"") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
}
