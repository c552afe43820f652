#include "biprox/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace biprox {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CVector CMatrix::column(int j) const {
    CVector v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

double CMatrix::max_abs() const {
    double m = 0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
    CMatrix m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const cplx x = a(i, k);
            if (x == cplx{}) continue;
            for (int j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
        }
    return m;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    CMatrix m = a;
    for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
    return m;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    CMatrix m = a;
    for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
    return m;
}

CVector operator*(const CMatrix& a, const CVector& v) {
    CVector out(a.r_);
    for (int i = 0; i < a.r_; ++i) {
        cplx s = 0;
        for (int j = 0; j < a.c_; ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

cplx dot(const CVector& a, const CVector& b) {
    cplx s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm(const CVector& a) { return std::sqrt(std::real(dot(a, a))); }

EigenResult hermitian_eigen(const CMatrix& in, double rel_tol, int max_sweeps) {
    const int n = in.rows();
    CMatrix a = in;
    CMatrix v = CMatrix::identity(n);
    double fro = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) fro += std::norm(a(i, j));
    fro = std::sqrt(fro);
    for (int i = 0; i < n; ++i) a(i, i) = std::real(a(i, i));

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(2 * off) <= rel_tol * fro || off == 0) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx g = a(p, q);
                const double ag = std::abs(g);
                if (ag <= 1e-300) continue;
                const cplx w = g / ag;
                const double app = std::real(a(p, p)), aqq = std::real(a(q, q));
                const double theta = (aqq - app) / (2 * ag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1));
                if (theta < 0) t = -t;
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                const cplx cw = std::conj(w);
                for (int k = 0; k < n; ++k) {  // columns
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * cw * akq;
                    a(k, q) = s * akp + c * cw * akq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * cw * vkq;
                    v(k, q) = s * vkp + c * cw * vkq;
                }
                for (int k = 0; k < n; ++k) {  // rows
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * w * aqk;
                    a(q, k) = s * apk + c * w * aqk;
                }
                a(p, q) = a(q, p) = 0;
                a(p, p) = std::real(a(p, p));
                a(q, q) = std::real(a(q, q));
            }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return std::real(a(i, i)) < std::real(a(j, j)); });
    EigenResult r;
    r.values.resize(n);
    r.vectors = CMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        r.values[j] = std::real(a(order[j], order[j]));
        for (int i = 0; i < n; ++i) r.vectors(i, j) = v(i, order[j]);
    }
    return r;
}

CMatrix inverse(const CMatrix& in) {
    const int n = in.rows();
    CMatrix a = in, inv = CMatrix::identity(n);
    const double scale = std::max(in.max_abs(), 1e-300);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (std::abs(a(piv, col)) < 1e-13 * scale) throw std::runtime_error("singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const cplx d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            const cplx f = a(i, col);
            if (f == cplx{}) continue;
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::vector<CVector> nullspace(const CMatrix& in, double tol) {
    const int m = in.rows(), n = in.cols();
    CMatrix a = in;
    const double scale = std::max(in.max_abs(), 1e-300);
    std::vector<int> colperm(n);
    std::iota(colperm.begin(), colperm.end(), 0);
    int rank = 0;
    for (; rank < std::min(m, n); ++rank) {
        int pi = -1, pj = -1;
        double best = 0;
        for (int i = rank; i < m; ++i)
            for (int j = rank; j < n; ++j)
                if (std::abs(a(i, j)) > best) best = std::abs(a(i, j)), pi = i, pj = j;
        if (best <= tol * scale) break;
        for (int j = 0; j < n; ++j) std::swap(a(rank, j), a(pi, j));
        for (int i = 0; i < m; ++i) std::swap(a(i, rank), a(i, pj));
        std::swap(colperm[rank], colperm[pj]);
        const cplx d = a(rank, rank);
        for (int j = rank; j < n; ++j) a(rank, j) /= d;
        for (int i = 0; i < m; ++i) {
            if (i == rank) continue;
            const cplx f = a(i, rank);
            if (f == cplx{}) continue;
            for (int j = rank; j < n; ++j) a(i, j) -= f * a(rank, j);
        }
    }
    // reduced form [I R; 0 0] in permuted columns: kernel vectors are (-R e_k, e_k)
    std::vector<CVector> basis;
    for (int k = rank; k < n; ++k) {
        CVector v(n);
        v[colperm[k]] = 1.0;
        for (int i = 0; i < rank; ++i) v[colperm[i]] = -a(i, k);
        basis.push_back(std::move(v));
    }
    return orthonormalize(basis, 1e-12);
}

std::vector<CVector> orthonormalize(const std::vector<CVector>& vs, double tol) {
    std::vector<CVector> out;
    double n0 = 0;
    for (const auto& v : vs) n0 = std::max(n0, norm(v));
    if (n0 == 0) return out;
    for (const auto& v0 : vs) {
        CVector v = v0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : out) {
                const cplx c = dot(u, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
            }
        const double nv = norm(v);
        if (nv <= tol * n0) continue;
        for (auto& x : v) x /= nv;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace biprox
