#include <doctest.h>

#include <random>

#include "biprox/linalg.hpp"

using namespace biprox;

namespace {

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(nd(rng), nd(rng));
    return a + a.adjoint();
}

double max_dev(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("hermitian eigendecomposition reconstructs the matrix") {
    std::mt19937_64 rng(7);
    for (int n : {1, 2, 5, 12}) {
        CMatrix a = random_hermitian(n, rng);
        EigenResult e = hermitian_eigen(a);
        CMatrix d(n, n);
        for (int i = 0; i < n; ++i) d(i, i) = e.values[i];
        CHECK(max_dev(e.vectors * d * e.vectors.adjoint(), a) < 1e-10);
        CHECK(max_dev(e.vectors.adjoint() * e.vectors, CMatrix::identity(n)) < 1e-10);
        for (int i = 1; i < n; ++i) CHECK(e.values[i - 1] <= e.values[i]);
    }
}

TEST_CASE("known spectrum") {
    CMatrix a(2, 2);
    a(0, 1) = cplx(0, -1);
    a(1, 0) = cplx(0, 1);
    EigenResult e = hermitian_eigen(a);
    CHECK(e.values[0] == doctest::Approx(-1));
    CHECK(e.values[1] == doctest::Approx(1));
}

TEST_CASE("inverse and nullspace") {
    std::mt19937_64 rng(3);
    CMatrix a = random_hermitian(6, rng) + CMatrix::identity(6);
    CHECK(max_dev(a * inverse(a), CMatrix::identity(6)) < 1e-9);
    CMatrix s(3, 3);
    s(0, 0) = 1;
    s(0, 1) = 1;
    s(1, 2) = 1;
    auto ns = nullspace(s, 1e-12);
    REQUIRE(ns.size() == 1);
    CHECK(norm(s * ns[0]) < 1e-12);
    CHECK(norm(ns[0]) == doctest::Approx(1));
    CHECK_THROWS(inverse(s));
}

TEST_CASE("orthonormalize drops dependent vectors") {
    CVector a{1, 0, 0}, b{1, 1, 0}, c{2, 1, 0};
    auto q = orthonormalize({a, b, c}, 1e-10);
    REQUIRE(q.size() == 2);
    CHECK(std::abs(dot(q[0], q[1])) < 1e-12);
    CHECK(norm(q[1]) == doctest::Approx(1));
}
