#pragma once

#include <complex>
#include <vector>

namespace biprox {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense row-major complex matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    static CMatrix identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    CMatrix adjoint() const;
    CVector column(int j) const;
    double max_abs() const;

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
    friend CVector operator*(const CMatrix& a, const CVector& v);

private:
    int r_ = 0, c_ = 0;
    std::vector<cplx> a_;
};

struct EigenResult {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns, orthonormal
};

// Cyclic Jacobi for Hermitian matrices.
EigenResult hermitian_eigen(const CMatrix& a, double rel_tol = 1e-15, int max_sweeps = 100);

// LU with partial pivoting; throws std::runtime_error if singular to working precision.
CMatrix inverse(const CMatrix& a);

// Orthonormal basis of the kernel, via elimination with complete pivoting.
std::vector<CVector> nullspace(const CMatrix& a, double tol);

// Modified Gram-Schmidt (two passes) under the standard inner product;
// vectors whose residual falls below tol times the largest input norm are dropped.
std::vector<CVector> orthonormalize(const std::vector<CVector>& vs, double tol);

cplx dot(const CVector& a, const CVector& b);  // sum conj(a_i) b_i
double norm(const CVector& a);

}  // namespace biprox
