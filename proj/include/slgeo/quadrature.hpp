#pragma once

// Adaptive Gauss-Kronrod (G7/K15) quadrature on finite intervals.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace slgeo {

namespace detail {

// 15-point Kronrod abscissae on [0,1] (positive half) and weights, with the
// embedded 7-point Gauss weights.  Standard QUADPACK dqk15 constants.
inline constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class Func>
void gauss_kronrod_15(const Func& f, double a, double b, double& result, double& err) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double resg = kGaussW[3] * fc;
    double resk = kKronrodW[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double absc = half * kKronrodX[j];
        const double fsum = f(centre - absc) + f(centre + absc);
        resk += kKronrodW[j] * fsum;
        if (j % 2 == 1) resg += kGaussW[j / 2] * fsum;
    }
    result = resk * half;
    // |K15 - G7| bounds the Gauss error and overestimates the Kronrod error,
    // so acceptance against it is conservative.
    err = std::abs((resk - resg) * half);
}

}  // namespace detail

/// Integrates f over [a, b] to absolute error <= abs_tol by adaptive interval
/// bisection.  Throws std::runtime_error when the interval budget is exhausted
/// before the tolerance is met.
template <class Func>
double integrate_adaptive(const Func& f, double a, double b, double abs_tol,
                          std::size_t max_intervals = 512) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_adaptive: tolerance must be > 0");
    if (a == b) return 0.0;

    struct Segment {
        double a, b, tol;
    };
    std::vector<Segment> stack{{a, b, abs_tol}};
    std::size_t used = 1;
    double total = 0.0;
    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        double value = 0.0, err = 0.0;
        detail::gauss_kronrod_15(f, seg.a, seg.b, value, err);
        if (!std::isfinite(value))
            throw std::runtime_error("integrate_adaptive: integrand produced a non-finite value");
        if (err <= seg.tol) {
            total += value;
            continue;
        }
        if (used + 2 > max_intervals)
            throw std::runtime_error("integrate_adaptive: interval budget exhausted");
        used += 2;
        const double mid = 0.5 * (seg.a + seg.b);
        const double child_tol = 0.5 * seg.tol;
        stack.push_back({seg.a, mid, child_tol});
        stack.push_back({mid, seg.b, child_tol});
    }
    return total;
}

}  // namespace slgeo
