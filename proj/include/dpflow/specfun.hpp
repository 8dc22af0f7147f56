#ifndef DPFLOW_SPECFUN_HPP
#define DPFLOW_SPECFUN_HPP

/**
 * @file specfun.hpp
 * @brief Bessel functions, the two cross-product kernels, and the root finder
 *        for the case-specific transcendental conditions.
 *
 * The oscillatory kernel I_{m,n}(k,y,z) = J_m(ky)Y_n(kz) - Y_m(ky)J_n(kz)
 * defines the Hankel eigenvalues; the modified kernel
 * Psi_{m,n}(Phi,Ups,x) = K_m(Phi x)I_n(Ups x) + (-1)^{m+n+1} I_m(Phi x)K_n(Ups x)
 * appears in every Laplace-space solution. Bessel evaluation is backed by GSL;
 * the public contract (domains, accuracy, errors) is owned here.
 */

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpflow/params.hpp"

namespace dpflow {

namespace detail {
// GSL aborts on range errors by default; turn the global handler off once and
// work with status codes instead.
inline bool disable_gsl_abort() {
    gsl_set_error_handler_off();
    return true;
}
inline const bool gsl_handler_disabled = disable_gsl_abort();
}  // namespace detail

enum class BesselKind { J, Y, I, K };

/**
 * @brief Bessel function of the given kind and order (0 or 1).
 *
 * Domains: x >= 0 for J and I, x > 0 for Y and K. I overflows past the
 * exponent range and reports std::overflow_error; use the scaled forms
 * inside Psi for large arguments.
 */
inline double bessel(BesselKind kind, int order, double x) {
    if (order != 0 && order != 1)
        throw std::domain_error("bessel: order must be 0 or 1");
    if (!std::isfinite(x)) throw std::domain_error("bessel: non-finite argument");
    gsl_sf_result res;
    int status = 0;
    switch (kind) {
        case BesselKind::J:
            if (x < 0.0) throw std::domain_error("bessel: J requires x >= 0");
            status = order == 0 ? gsl_sf_bessel_J0_e(x, &res) : gsl_sf_bessel_J1_e(x, &res);
            break;
        case BesselKind::Y:
            if (x <= 0.0) throw std::domain_error("bessel: Y requires x > 0");
            status = order == 0 ? gsl_sf_bessel_Y0_e(x, &res) : gsl_sf_bessel_Y1_e(x, &res);
            break;
        case BesselKind::I:
            if (x < 0.0) throw std::domain_error("bessel: I requires x >= 0");
            status = order == 0 ? gsl_sf_bessel_I0_e(x, &res) : gsl_sf_bessel_I1_e(x, &res);
            if (status == GSL_EOVRFLW)
                throw std::overflow_error("bessel: I overflow at x = " + std::to_string(x));
            break;
        case BesselKind::K:
            if (x <= 0.0) throw std::domain_error("bessel: K requires x > 0");
            status = order == 0 ? gsl_sf_bessel_K0_e(x, &res) : gsl_sf_bessel_K1_e(x, &res);
            break;
    }
    if (status != 0 && status != GSL_EUNDRFLW)
        throw std::runtime_error(std::string("bessel: GSL error: ") + gsl_strerror(status));
    return res.val;
}

inline double bessel_j(int order, double x) { return bessel(BesselKind::J, order, x); }
inline double bessel_y(int order, double x) { return bessel(BesselKind::Y, order, x); }

/// I_{m,n}(k,y,z) = J_m(ky) Y_n(kz) - Y_m(ky) J_n(kz).
inline double cross_i(int m, int n, double k, double y, double z) {
    if (!(k > 0.0) || !(y > 0.0) || !(z > 0.0))
        throw std::domain_error("cross_i: arguments must be strictly positive");
    return bessel_j(m, k * y) * bessel_y(n, k * z) - bessel_y(m, k * y) * bessel_j(n, k * z);
}

/// A value represented as mantissa * exp(exponent), for products of modified
/// Bessel functions whose exponential scales exceed double range.
struct ScaledValue {
    double mantissa = 0.0;
    double exponent = 0.0;

    double value() const {
        if (mantissa == 0.0) return 0.0;
        double e = exponent + std::log(std::abs(mantissa));
        if (e > 709.0) throw std::overflow_error("ScaledValue: magnitude exceeds double range");
        return mantissa * std::exp(exponent);
    }
};

/// Ratio a/b of two scaled values as a plain double.
inline double scaled_ratio(const ScaledValue& a, const ScaledValue& b) {
    return a.mantissa / b.mantissa * std::exp(a.exponent - b.exponent);
}

/**
 * @brief Psi_{m,n}(Phi,Ups,x) in scaled form.
 *
 * Evaluated from e^{-z}I and e^{z}K so that only the net exponent
 * |Ups - Phi| x is ever exponentiated.
 */
inline ScaledValue cross_psi_scaled(int m, int n, double Phi, double Ups, double x) {
    if (m != 0 && m != 1) throw std::domain_error("cross_psi: m must be 0 or 1");
    if (n != 0 && n != 1) throw std::domain_error("cross_psi: n must be 0 or 1");
    if (!(Phi > 0.0) || !(Ups > 0.0) || !(x > 0.0))
        throw std::domain_error("cross_psi: arguments must be strictly positive");
    const double a = Phi * x, b = Ups * x;
    gsl_sf_result r;
    auto Is = [&](int o, double z) {
        (o == 0 ? gsl_sf_bessel_I0_scaled_e(z, &r) : gsl_sf_bessel_I1_scaled_e(z, &r));
        return r.val;
    };
    auto Ks = [&](int o, double z) {
        (o == 0 ? gsl_sf_bessel_K0_scaled_e(z, &r) : gsl_sf_bessel_K1_scaled_e(z, &r));
        return r.val;
    };
    const double sign = ((m + n + 1) % 2 == 0) ? 1.0 : -1.0;
    const double t1 = Ks(m, a) * Is(n, b);  // K_m(a)I_n(b) = t1 * e^{b-a}
    const double t2 = Is(m, a) * Ks(n, b);  // I_m(a)K_n(b) = t2 * e^{a-b}
    const double e1 = b - a;
    ScaledValue out;
    out.exponent = std::abs(e1);
    if (e1 >= 0.0)
        out.mantissa = t1 + sign * t2 * std::exp(-2.0 * e1);
    else
        out.mantissa = t1 * std::exp(2.0 * e1) + sign * t2;
    return out;
}

/// Psi_{m,n}(Phi,Ups,x) as a plain double; throws std::overflow_error when
/// the result exceeds double range.
inline double cross_psi(int m, int n, double Phi, double Ups, double x) {
    return cross_psi_scaled(m, n, Phi, Ups, x).value();
}

/// Case-specific root condition kernel (zeros are the Hankel eigenvalues).
inline double root_kernel(BoundaryCase bc, double k, double r_ext) {
    switch (bc) {
        case BoundaryCase::DD: return cross_i(0, 0, k, 1.0, r_ext);
        case BoundaryCase::DN: return cross_i(1, 0, k, r_ext, 1.0);
        case BoundaryCase::ND: return cross_i(1, 0, k, 1.0, r_ext);
        case BoundaryCase::NN: return cross_i(1, 1, k, 1.0, r_ext);
    }
    throw std::logic_error("root_kernel: bad case");
}

/// Kernel rescaled to unit local slope: the asymptotic envelope
/// pi k sqrt(r_ext)/2 removes the amplitude decay and the extra 1/(r_ext - 1)
/// flattens the phase rate, so |normalized kernel| at an approximate root
/// reads directly as its distance in k from the true zero. Residuals are
/// measured on this form.
inline double root_kernel_normalized(BoundaryCase bc, double k, double r_ext) {
    constexpr double half_pi = 1.5707963267948966;
    return half_pi * k * std::sqrt(r_ext) / (r_ext - 1.0) * root_kernel(bc, k, r_ext);
}

/**
 * @brief Ascending positive roots of the case kernel with per-root residuals.
 *
 * residuals[i] = |normalized kernel at roots[i]|, all <= residual_bound.
 */
struct RootTable {
    BoundaryCase bc = BoundaryCase::DD;
    double r_ext = 0.0;
    std::vector<double> roots;
    std::vector<double> residuals;

    static constexpr double residual_bound = 1e-12;

    std::size_t size() const { return roots.size(); }
};

namespace detail {

/// Refine a sign-change bracket to the best representable double.
/// Bisection to a few ulps, then pick the candidate minimizing |f|.
template <class F>
inline double polish_root(F&& f, double lo, double hi, double flo, double fhi) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::runtime_error("find_roots: bracket without sign change");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at ulp width
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double best = lo, fbest = std::abs(flo);
    for (double c : {hi, std::nextafter(lo, 0.0), std::nextafter(hi, hi * 2.0)}) {
        const double fc = std::abs(f(c));
        if (fc < fbest) {
            best = c;
            fbest = fc;
        }
    }
    return best;
}

}  // namespace detail

/**
 * @brief Find the n smallest positive roots of the case kernel.
 *
 * Scan design: the main sweep uses step pi/(4(r_ext-1)), a quarter of the
 * asymptotic root spacing. Below the first step the kernel is scanned on a
 * geometric grid down to 1e-4 of the step: the DN condition has one root far
 * below the asymptotic spacing (the slow drainage mode of the closed
 * reservoir), which a linear scan starting at the step size misses.
 *
 * Every table is verified by an independent sign-change count at half the
 * scan step; a mismatch throws.
 */
inline RootTable find_roots(BoundaryCase bc, double r_ext, std::size_t n) {
    if (!(r_ext > 1.0)) throw std::domain_error("find_roots: r_ext must exceed 1");
    if (n < 1) throw std::domain_error("find_roots: need n >= 1");

    const double step = M_PI / (4.0 * (r_ext - 1.0));
    auto f = [&](double k) { return root_kernel_normalized(bc, k, r_ext); };

    RootTable table;
    table.bc = bc;
    table.r_ext = r_ext;
    table.roots.reserve(n);

    // geometric sub-scan below the first linear step
    const int sub_points = 192;
    {
        double a = step * 1e-4;
        double fa = f(a);
        const double ratio = std::pow(1e4, 1.0 / (sub_points - 1));
        for (int i = 1; i < sub_points && table.roots.size() < n; ++i) {
            const double b = std::min(step, a * ratio);
            const double fb = f(b);
            if (fa == 0.0)
                table.roots.push_back(a);
            else if ((fa > 0.0) != (fb > 0.0))
                table.roots.push_back(detail::polish_root(f, a, b, fa, fb));
            a = b;
            fa = fb;
        }
    }
    // linear sweep
    {
        double a = step;
        double fa = f(a);
        while (table.roots.size() < n) {
            const double b = a + step;
            const double fb = f(b);
            if (fb == 0.0)
                table.roots.push_back(b);
            else if ((fa > 0.0) != (fb > 0.0))
                table.roots.push_back(detail::polish_root(f, a, b, fa, fb));
            a = b;
            fa = fb;
        }
    }
    table.roots.resize(n);

    table.residuals.reserve(n);
    for (double k : table.roots) {
        const double res = std::abs(f(k));
        if (!(res <= RootTable::residual_bound)) {
            char msg[128];
            std::snprintf(msg, sizeof(msg),
                          "find_roots: root polish residual %.3e exceeds bound at k = %.17g", res,
                          k);
            throw std::runtime_error(msg);
        }
        table.residuals.push_back(res);
    }

    // independent verification scan at doubled density over the covered range
    {
        const double upper = table.roots.back() + 0.25 * step;
        std::size_t count = 0;
        double a = step * 1e-4;
        double fa = f(a);
        const double ratio = std::pow(1e4, 1.0 / (2 * sub_points - 1));
        for (int i = 1; i < 2 * sub_points; ++i) {
            const double b = std::min(step, a * ratio);
            const double fb = f(b);
            if (fa == 0.0 || (fa > 0.0) != (fb > 0.0)) ++count;
            a = b;
            fa = fb;
        }
        const double fine = 0.5 * step;
        while (a < upper) {
            const double b = std::min(upper, a + fine);
            const double fb = f(b);
            if (fb == 0.0 || (fa > 0.0) != (fb > 0.0)) ++count;
            a = b;
            fa = fb;
        }
        if (count != n)
            throw std::runtime_error("find_roots: verification scan counted " +
                                     std::to_string(count) + " roots, expected " +
                                     std::to_string(n));
    }
    return table;
}

}  // namespace dpflow

#endif  // DPFLOW_SPECFUN_HPP
