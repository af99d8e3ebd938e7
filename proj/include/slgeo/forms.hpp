#pragma once

// Pointwise evaluation of the ambient structures on C^n: the standard
// symplectic form, the Fubini-Study form of the affine chart, the holomorphic
// (n,0)-form, the Fubini-Study Hermitian metric and the conformal factor of
// the almost Calabi-Yau rescaling.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "slgeo/linalg.hpp"

namespace slgeo {

using AmbientPoint = CVector;
using TangentVector = CVector;

enum class FormKind { Standard, FubiniStudy };

/// omega_st(u,v) = Im<u,v>; satisfies omega_st(u, Ju) = <u,u>.
inline double omega_st(const TangentVector& u, const TangentVector& v) {
    return hermitian_inner(u, v).imag();
}

inline double potential_denominator(const AmbientPoint& z) {
    double k = 1.0;
    for (const Complex& c : z) k += std::norm(c);
    return k;
}

/// tau = sum_{p,q} conj(z_p) z_q dz_p ^ dconj(z_q), evaluated on (u,v).
/// The coefficient matrix has rank one, so the double sum collapses to
/// P*conj(S) - conj(P)*S with P = <z,u>, S = <z,v>; the value is purely
/// imaginary by construction.
inline Complex tau(const AmbientPoint& z, const TangentVector& u, const TangentVector& v) {
    const Complex p = hermitian_inner(z, u);
    const Complex s = hermitian_inner(z, v);
    return Complex{0.0, 2.0 * std::imag(p * std::conj(s))};
}

/// omega_fs = omega_st / K - (i / 2K^2) tau with K = 1 + |z|^2.
inline double omega_fs(const AmbientPoint& z, const TangentVector& u, const TangentVector& v) {
    if (z.size() != u.size() || u.size() != v.size())
        throw std::invalid_argument("omega_fs: dimension mismatch");
    const double k = potential_denominator(z);
    const Complex t = tau(z, u, v);
    const double correction = (Complex{0.0, 0.5} * t).real();
    return omega_st(u, v) / k - correction / (k * k);
}

inline double omega(FormKind kind, const AmbientPoint& z, const TangentVector& u,
                    const TangentVector& v) {
    return kind == FormKind::Standard ? omega_st(u, v) : omega_fs(z, u, v);
}

/// Omega = dz_1 ^ ... ^ dz_n evaluated on n tangent vectors.
inline Complex holomorphic_volume(const std::vector<TangentVector>& vectors) {
    return complex_det(CMatrix::from_columns(vectors));
}

/// g_FS(u,v) = omega_fs(z, u, Jv); symmetric and positive definite.
inline double fs_metric(const AmbientPoint& z, const TangentVector& u, const TangentVector& v) {
    return omega_fs(z, u, apply_J(v));
}

/// Flat Kaehler metric: g_st(u,v) = omega_st(u, Jv) = Re<u,v>.
inline double flat_metric(const TangentVector& u, const TangentVector& v) {
    return hermitian_inner(u, v).real();
}

inline double metric(FormKind kind, const AmbientPoint& z, const TangentVector& u,
                     const TangentVector& v) {
    return kind == FormKind::Standard ? flat_metric(u, v) : fs_metric(z, u, v);
}

/// Component matrix h_pq = delta_pq / K - conj(z_p) z_q / K^2 of the
/// Fubini-Study Kaehler metric, K = 1 + |z|^2.  Hermitian positive definite
/// with det h = K^{-(n+1)}.
inline CMatrix fs_hermitian_matrix(const AmbientPoint& z) {
    const std::size_t n = z.size();
    if (n == 0) throw std::invalid_argument("fs_hermitian_matrix: empty point");
    const double k = potential_denominator(z);
    const double kk = k * k;
    CMatrix h(n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            h(p, q) = -std::conj(z[p]) * z[q] / kk;
            if (p == q) h(p, q) += 1.0 / k;
        }
    return h;
}

/// Conformal factor c(z) = det(h)^{-1/n} of the almost Calabi-Yau rescaling
/// c * g_FS; analytically equal to (1 + |z|^2)^{(n+1)/n}.
inline double conformal_factor(const AmbientPoint& z) {
    const std::size_t n = z.size();
    if (n == 0) throw std::invalid_argument("conformal_factor: empty point");
    const double det = complex_det(fs_hermitian_matrix(z)).real();
    if (!(det > 0.0)) throw std::domain_error("conformal_factor: degenerate Hermitian matrix");
    return std::pow(det, -1.0 / static_cast<double>(n));
}

}  // namespace slgeo
