#pragma once

// Dense complex/real linear algebra kernels for small n (n <= 8 in practice).

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slgeo {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using RVector = std::vector<double>;

/// Dense square complex matrix, row-major storage.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Builds the matrix whose j-th column is cols[j].
    static CMatrix from_columns(const std::vector<CVector>& cols) {
        const std::size_t n = cols.size();
        if (n == 0) throw std::invalid_argument("CMatrix::from_columns: no columns");
        CMatrix m(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (cols[j].size() != n)
                throw std::invalid_argument("CMatrix::from_columns: column " + std::to_string(j) +
                                            " has length " + std::to_string(cols[j].size()) +
                                            ", expected " + std::to_string(n));
            for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t dim() const { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    CMatrix operator*(const CMatrix& rhs) const {
        if (n_ != rhs.n_) throw std::invalid_argument("CMatrix::operator*: dimension mismatch");
        CMatrix out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                const Complex f = (*this)(i, k);
                for (std::size_t j = 0; j < n_; ++j) out(i, j) += f * rhs(k, j);
            }
        return out;
    }

private:
    std::size_t n_ = 0;
    std::vector<Complex> a_;
};

/// Hermitian inner product <u,v> = sum conj(u_j) v_j, conjugate-linear in the
/// first slot.  This convention makes omega_st(u,v) = Im<u,v>.
inline Complex hermitian_inner(const CVector& u, const CVector& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("hermitian_inner: dimension mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < u.size(); ++j) acc += std::conj(u[j]) * v[j];
    return acc;
}

inline double dot(const RVector& u, const RVector& v) {
    if (u.size() != v.size()) throw std::invalid_argument("dot: dimension mismatch");
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) acc += u[j] * v[j];
    return acc;
}

inline double norm(const RVector& u) { return std::sqrt(dot(u, u)); }

inline double norm(const CVector& u) {
    double acc = 0.0;
    for (const Complex& c : u) acc += std::norm(c);
    return std::sqrt(acc);
}

/// Determinant by LU with partial pivoting.  The matrix is taken by value and
/// destroyed during elimination.
inline Complex complex_det(CMatrix m) {
    const std::size_t n = m.dim();
    if (n == 0) throw std::invalid_argument("complex_det: empty matrix");
    Complex det{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::abs(m(i, k));
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (best == 0.0) return {0.0, 0.0};
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(piv, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = m(i, k) / m(k, k);
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

/// Determinant of the real matrix whose j-th column is columns[j].
inline double real_det(const std::vector<RVector>& columns) {
    const std::size_t n = columns.size();
    if (n == 0) throw std::invalid_argument("real_det: no columns");
    std::vector<CVector> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (columns[j].size() != n)
            throw std::invalid_argument("real_det: column " + std::to_string(j) +
                                        " has length " + std::to_string(columns[j].size()) +
                                        ", expected " + std::to_string(n));
        cols[j].assign(columns[j].begin(), columns[j].end());
    }
    // Real inputs keep exactly-zero imaginary parts through the elimination.
    return complex_det(CMatrix::from_columns(cols)).real();
}

/// The standard almost complex structure J: coordinatewise multiplication by i.
inline CVector apply_J(CVector u) {
    for (Complex& c : u) c = Complex{-c.imag(), c.real()};
    return u;
}

}  // namespace slgeo
