#ifndef DPFLOW_QUADRATURE_HPP
#define DPFLOW_QUADRATURE_HPP

/**
 * @file quadrature.hpp
 * @brief Adaptive Simpson integration for the convolution fallbacks.
 */

#include <cmath>
#include <stdexcept>

namespace dpflow {

namespace detail {

template <class F>
double simpson_rec(F&& f, double a, double m, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0) throw std::runtime_error("adaptive_simpson: recursion limit reached");
    if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 60) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace dpflow

#endif  // DPFLOW_QUADRATURE_HPP
