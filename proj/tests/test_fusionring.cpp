#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "biprox/boxalgebra.hpp"
#include "biprox/catalog.hpp"
#include "biprox/errors.hpp"
#include "biprox/fusionring.hpp"

using namespace biprox;

namespace {

FusionRing kac() { return load_fusion_ring(std::string(BIPROX_DATA_DIR) + "/kac210.txt"); }

// Fusion coefficients of Rep(S3) from its character table; classes e, transpositions, 3-cycles.
std::vector<std::vector<std::vector<long long>>> s3_from_characters() {
    const double sizes[3] = {1, 3, 2};
    const double chi[3][3] = {{1, 1, 1}, {1, -1, 1}, {2, 0, -1}};
    std::vector<std::vector<std::vector<long long>>> n(3, std::vector<std::vector<long long>>(3, std::vector<long long>(3)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double s = 0;
                for (int c = 0; c < 3; ++c) s += sizes[c] * chi[i][c] * chi[j][c] * chi[k][c];
                n[i][j][k] = std::lround(s / 6);
            }
    return n;
}

}  // namespace

TEST_CASE("stored ring satisfies the axioms") {
    FusionRing r = kac();
    CHECK(r.rank == 7);
    CHECK_NOTHROW(verify_axioms(r));
    auto d = fp_dimensions(r);
    const std::vector<double> want{1, 5, 5, 5, 6, 7, 7};
    double total = 0;
    for (int i = 0; i < 7; ++i) {
        CHECK(d[i] == doctest::Approx(want[i]).epsilon(1e-12));
        total += d[i] * d[i];
    }
    CHECK(total == doctest::Approx(210));
}

TEST_CASE("FP dimensions form a common eigenvector") {
    for (const FusionRing& r : {kac(), group_ring(parse_group_spec("S3")), make_fusion_ring(s3_from_characters())}) {
        auto d = fp_dimensions(r);
        for (int i = 0; i < r.rank; ++i)
            for (int j = 0; j < r.rank; ++j) {
                double s = 0;
                for (int k = 0; k < r.rank; ++k) s += static_cast<double>(r(i, j, k)) * d[k];
                CHECK(s == doctest::Approx(d[i] * d[j]).epsilon(1e-10));
            }
    }
}

TEST_CASE("only trivial subrings in the stored ring") {
    auto subs = find_subrings(kac());
    REQUIRE(subs.size() == 2);
    CHECK(subs.front() == std::vector<int>{0});
    CHECK(subs.back().size() == 7);
}

TEST_CASE("subrings of Rep(S3)") {
    FusionRing r = make_fusion_ring(s3_from_characters());
    CHECK_NOTHROW(verify_axioms(r));
    auto subs = find_subrings(r);
    CHECK(subs.size() == 3);  // {1}, {1, sign}, all
    CHECK(r.dual == std::vector<int>{0, 1, 2});
}

TEST_CASE("representation ring recovered from the primal algebra of S3") {
    GroupPtr g = parse_group_spec("S3");
    auto cf = fusion_from_context(BoxContext::primal(g, trivial_subgroup(g)));
    CHECK(cf.patterns_agree);
    CHECK_NOTHROW(verify_axioms(cf.ring));
    auto ref = make_fusion_ring(s3_from_characters());
    // blocks may come in another order; try the two relabelings fixing the unit
    std::vector<int> perm{0, 1, 2};
    bool matched = false;
    do {
        if (perm[0] != 0) continue;
        bool ok = true;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) ok = ok && cf.ring(i, j, k) == ref(perm[i], perm[j], perm[k]);
        matched = matched || ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(matched);
}

TEST_CASE("abelian groups give their group ring") {
    for (int n : {2, 5, 6, 12}) {
        GroupPtr g = parse_group_spec("Z" + std::to_string(n));
        auto cf = fusion_from_context(BoxContext::primal(g, trivial_subgroup(g)));
        CHECK(cf.patterns_agree);
        auto d = fp_dimensions(cf.ring);
        for (double x : d) CHECK(x == doctest::Approx(1));
        // every product is a single simple and each row is a permutation
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long long s = 0;
                for (int k = 0; k < n; ++k) s += cf.ring(i, j, k);
                CHECK(s == 1);
            }
        CHECK(find_subrings(cf.ring).size() == find_subrings(group_ring(g)).size());
    }
}

TEST_CASE("nontrivial bottom is rejected") {
    GroupPtr g = parse_group_spec("S3");
    CHECK_THROWS_AS(fusion_from_context(BoxContext::primal(g, parse_subgroup_spec(g, "(1,2)"))), NotTrivialH);
}

TEST_CASE("parse errors and axiom violations") {
    std::istringstream short_input("2\n1 0\n0 1\n");
    CHECK_THROWS_AS(parse_fusion_ring(short_input), ParseError);
    std::istringstream junk("1 x 0");
    CHECK_THROWS_AS(parse_fusion_ring(junk), ParseError);
    // rank 2 with x*x = 2x: no unit in the fusion rules for x*x
    auto n = std::vector<std::vector<std::vector<long long>>>{{{1, 0}, {0, 1}}, {{0, 1}, {0, 2}}};
    CHECK_THROWS_AS(verify_axioms(make_fusion_ring(n)), AxiomViolation);
    // commented input parses
    std::istringstream ok("# Z2\n1 0\n0 1\n0 1\n1 0\n");
    FusionRing z2 = parse_fusion_ring(ok);
    CHECK(z2.rank == 2);
    CHECK_NOTHROW(verify_axioms(z2));
}
