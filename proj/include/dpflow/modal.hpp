#ifndef DPFLOW_MODAL_HPP
#define DPFLOW_MODAL_HPP

/**
 * @file modal.hpp
 * @brief Per-root modal quantities of the time-domain series.
 *
 * For a Hankel root k the transient content of every boundary case is built
 * from four primitives, all inverse transforms around D(s) = eta(s) + k^2:
 *
 *   u(k,t)  = L^{-1}[ 1/D ]                       (unit kernel mode)
 *   Q1(k,t) = L^{-1}[ 1/(s D) ]        = int_0^t u
 *   R1(k,t) = Q1 - 1/k^2                           (decaying part of Q1)
 *   Q2(k,t) = L^{-1}[ 1/((s+1/gamma) D) ] = int_0^t e^{-(t-z)/gamma} u(z) dz
 *
 * D has the two real negative roots s1 = -(xi+nu)/(2 psi) (slow) and
 * s2 = -(xi-nu)/(2 psi) (fast). All closed forms below are partial-fraction
 * inversions expressed directly in e^{s1 t}, e^{s2 t}, e^{-t/gamma}; each
 * exponent is a single negative number, so nothing overflows. The printed
 * nested-exponential groupings of the same quantities overflow double range
 * for small lambda and are not used.
 *
 * Degenerate parameter sets are routed to their own branches: omega = 1 gives
 * pure e^{-k^2 t} modes, lambda = 0 gives e^{-k^2 t/omega} modes. When
 * 1/gamma collides with a modal rate (|gamma s_j + 1| below tolerance) the Q2
 * closed form loses significance and the defining convolution integral is
 * evaluated instead.
 */

#include <cmath>
#include <stdexcept>

#include "dpflow/params.hpp"
#include "dpflow/quadrature.hpp"
#include "dpflow/specfun.hpp"

namespace dpflow {

/// Auxiliary per-root coefficients of the double-porosity modal transients.
struct ModalTerms {
    double k = 0.0;
    double psi = 0.0;       ///< omega (omega - 1), <= 0
    double xi = 0.0;        ///< -lambda + k^2 (omega - 1)
    double rho = 0.0;       ///< lambda + k^2 (omega - 1)
    double nu = 0.0;        ///< sqrt(xi^2 + 4 k^2 lambda psi), real for admissible params
    double vartheta = 0.0;  ///< gamma xi - psi + k^2 gamma^2 lambda
    double A = 0.0;         ///< xi + 2 omega lambda
    double B = 0.0;         ///< (nu + xi) gamma
    double C = 0.0;         ///< (nu - xi) gamma
    double s1 = 0.0;        ///< slow decay rate, -(xi+nu)/(2 psi) <= 0
    double s2 = 0.0;        ///< fast decay rate, -(xi-nu)/(2 psi) <= 0

    static ModalTerms make(double k, const ReservoirParams& p) {
        if (p.omega == 1.0)
            throw std::domain_error("ModalTerms: psi = 0 (single porosity) must use its own branch");
        ModalTerms m;
        m.k = k;
        const double om = p.omega, lam = p.lambda, g = p.gamma;
        m.psi = om * (om - 1.0);
        m.xi = -lam + k * k * (om - 1.0);
        m.rho = lam + k * k * (om - 1.0);
        const double disc = m.xi * m.xi + 4.0 * k * k * lam * m.psi;
        m.nu = std::sqrt(std::max(disc, 0.0));
        m.vartheta = g * m.xi - m.psi + k * k * g * g * lam;
        m.A = m.xi + 2.0 * om * lam;
        m.B = (m.nu + m.xi) * g;
        m.C = (m.nu - m.xi) * g;
        m.s1 = -(m.xi + m.nu) / (2.0 * m.psi);
        m.s2 = -(m.xi - m.nu) / (2.0 * m.psi);
        return m;
    }
};

namespace detail {

enum class ModalBranch { general, single_porosity, frozen_matrix };

inline ModalBranch modal_branch(const ReservoirParams& p) {
    if (p.omega == 1.0) return ModalBranch::single_porosity;
    if (p.lambda == 0.0) return ModalBranch::frozen_matrix;
    return ModalBranch::general;
}

}  // namespace detail

/// u(k,t) = L^{-1}[1/(eta(s)+k^2)]; u(k,0) = 1/omega.
inline double u_mode(double k, double t, const ReservoirParams& p) {
    if (!(k > 0.0)) throw std::domain_error("u_mode: k must be > 0");
    if (!(t >= 0.0)) throw std::domain_error("u_mode: t must be >= 0");
    switch (detail::modal_branch(p)) {
        case detail::ModalBranch::single_porosity:
            return std::exp(-k * k * t);
        case detail::ModalBranch::frozen_matrix:
            return std::exp(-k * k * t / p.omega) / p.omega;
        case detail::ModalBranch::general: {
            const ModalTerms m = ModalTerms::make(k, p);
            return ((m.A + m.nu) * std::exp(m.s1 * t) - (m.A - m.nu) * std::exp(m.s2 * t)) /
                   (2.0 * p.omega * m.nu);
        }
    }
    throw std::logic_error("u_mode: bad branch");
}

/// R1(k,t) = Q1 - 1/k^2; R1(k,0) = -1/k^2 and R1 -> 0 as t -> inf.
inline double r1(double k, double t, const ReservoirParams& p) {
    if (!(k > 0.0)) throw std::domain_error("r1: k must be > 0");
    if (!(t >= 0.0)) throw std::domain_error("r1: t must be >= 0");
    switch (detail::modal_branch(p)) {
        case detail::ModalBranch::single_porosity:
            return -std::exp(-k * k * t) / (k * k);
        case detail::ModalBranch::frozen_matrix:
            return -std::exp(-k * k * t / p.omega) / (k * k);
        case detail::ModalBranch::general: {
            const ModalTerms m = ModalTerms::make(k, p);
            return ((m.rho - m.nu) * std::exp(m.s2 * t) - (m.rho + m.nu) * std::exp(m.s1 * t)) /
                   (2.0 * k * k * m.nu);
        }
    }
    throw std::logic_error("r1: bad branch");
}

/// Q1(k,t) = int_0^t u dz, via its own partial-fraction grouping (kept as an
/// independent route from r1; the identity Q1 = 1/k^2 + R1 is a test surface).
inline double q1(double k, double t, const ReservoirParams& p) {
    if (!(k > 0.0)) throw std::domain_error("q1: k must be > 0");
    if (!(t >= 0.0)) throw std::domain_error("q1: t must be >= 0");
    switch (detail::modal_branch(p)) {
        case detail::ModalBranch::single_porosity:
            return (1.0 - std::exp(-k * k * t)) / (k * k);
        case detail::ModalBranch::frozen_matrix:
            return (1.0 - std::exp(-k * k * t / p.omega)) / (k * k);
        case detail::ModalBranch::general: {
            const ModalTerms m = ModalTerms::make(k, p);
            const double e1 = std::exp(m.s1 * t), e2 = std::exp(m.s2 * t);
            return (m.rho * (e2 - e1) + m.nu * (2.0 - e2 - e1)) / (2.0 * k * k * m.nu);
        }
    }
    throw std::logic_error("q1: bad branch");
}

namespace detail {

/// Q2 by adaptive quadrature of the defining convolution, substituting
/// z = t - gamma w so the ramp kernel has unit scale.
inline double q2_quadrature(double k, double t, const ReservoirParams& p) {
    const double g = p.gamma;
    const double wmax = std::min(t / g, 60.0);
    if (wmax == 0.0) return 0.0;
    const double scale = g * u_mode(k, std::max(t - g * wmax, 0.0), p);
    const double tol = 1e-13 * std::max(scale, 1e-30) * wmax + 1e-300;
    return g * adaptive_simpson(
                   [&](double w) { return std::exp(-w) * u_mode(k, t - g * w, p); }, 0.0, wmax, tol);
}

}  // namespace detail

/// Q2(k,t) = int_0^t e^{-(t-z)/gamma} u(k,z) dz.
inline double q2(double k, double t, const ReservoirParams& p) {
    if (!(k > 0.0)) throw std::domain_error("q2: k must be > 0");
    if (!(t >= 0.0)) throw std::domain_error("q2: t must be >= 0");
    const double g = p.gamma;
    switch (detail::modal_branch(p)) {
        case detail::ModalBranch::single_porosity: {
            const double d = 1.0 / g - k * k;
            if (std::abs(g * d) < 1e-10) return t * std::exp(-t / g);
            return (std::exp(-k * k * t) - std::exp(-t / g)) / d;
        }
        case detail::ModalBranch::frozen_matrix: {
            const double d = 1.0 / g - k * k / p.omega;
            if (std::abs(g * d) < 1e-10) return t * std::exp(-t / g) / p.omega;
            return (std::exp(-k * k * t / p.omega) - std::exp(-t / g)) / (p.omega * d);
        }
        case detail::ModalBranch::general: {
            const ModalTerms m = ModalTerms::make(k, p);
            // denominators (B - 2 psi) and (C + 2 psi) are, up to -+2 psi,
            // gamma (s_j + 1/gamma): a ramp/mode rate collision degrades them
            const double d1 = g * m.s1 + 1.0;  // = -(B - 2 psi)/(2 psi)
            const double d2 = g * m.s2 + 1.0;  // =  (C + 2 psi)/(2 psi)
            if (std::abs(d1) < 1e-10 || std::abs(d2) < 1e-10)
                return detail::q2_quadrature(k, t, p);
            const double eg = std::exp(-t / g);
            const double n1 = (m.A + m.nu) / (2.0 * p.omega);
            const double n2 = (m.A - m.nu) / (2.0 * p.omega);
            return g * (n1 * (std::exp(m.s1 * t) - eg) / d1 - n2 * (std::exp(m.s2 * t) - eg) / d2) /
                   m.nu;
        }
    }
    throw std::logic_error("q2: bad branch");
}

/// chi(k,t): transient of the constant-rate (no-flow) Hankel mode,
/// chi(k,0) = -2/(pi k^3), chi -> 0 as t -> inf.
inline double chi(double k, double t, const ReservoirParams& p) {
    if (!(k > 0.0)) throw std::domain_error("chi: k must be > 0");
    if (!(t >= 0.0)) throw std::domain_error("chi: t must be >= 0");
    switch (detail::modal_branch(p)) {
        case detail::ModalBranch::single_porosity:
            return -2.0 * std::exp(-k * k * t) / (M_PI * k * k * k);
        case detail::ModalBranch::frozen_matrix:
            return -2.0 * std::exp(-k * k * t / p.omega) / (M_PI * k * k * k);
        case detail::ModalBranch::general: {
            const ModalTerms m = ModalTerms::make(k, p);
            return ((m.rho - m.nu) * std::exp(m.s2 * t) - (m.rho + m.nu) * std::exp(m.s1 * t)) /
                   (M_PI * k * k * k * m.nu);
        }
    }
    throw std::logic_error("chi: bad branch");
}

/// DN influx coupling coefficient  q_ext J0(k) / (r_ext k J1(r_ext k)).
inline double influx_coeff_dn(double k, const ReservoirParams& p) {
    return p.q_ext * bessel_j(0, k) / (p.r_ext * k * bessel_j(1, k * p.r_ext));
}

/// NN influx coupling coefficient  q_ext J1(k) / (r_ext k J1(r_ext k)).
inline double influx_coeff_nn(double k, const ReservoirParams& p) {
    return p.q_ext * bessel_j(1, k) / (p.r_ext * k * bessel_j(1, k * p.r_ext));
}

/**
 * @brief g(k,t): the case's Hankel-space transient, normalized so that
 *        g(k,0) exactly cancels the time-independent coefficient.
 *
 * DD: -(2/pi) R1            DN: (2/pi)[(c_B - 1) R1 - c_B Q2]
 * ND: (2/(pi k)) R1         NN: chi - (2/pi) c_N (R1 - Q2)
 */
inline double modal_decay(BoundaryCase bc, double k, double t, const ReservoirParams& p) {
    constexpr double two_over_pi = M_2_PI;
    switch (bc) {
        case BoundaryCase::DD:
            return -two_over_pi * r1(k, t, p);
        case BoundaryCase::DN: {
            const double cb = influx_coeff_dn(k, p);
            if (cb == 0.0) return -two_over_pi * r1(k, t, p);
            return two_over_pi * ((cb - 1.0) * r1(k, t, p) - cb * q2(k, t, p));
        }
        case BoundaryCase::ND:
            return two_over_pi * r1(k, t, p) / k;
        case BoundaryCase::NN: {
            const double cn = influx_coeff_nn(k, p);
            if (cn == 0.0) return chi(k, t, p);
            return chi(k, t, p) - two_over_pi * cn * (r1(k, t, p) - q2(k, t, p));
        }
    }
    throw std::logic_error("modal_decay: bad case");
}

/// Time-independent Hankel coefficient of the case (what modal_decay cancels
/// at t = 0, with opposite sign).
inline double stationary_coeff(BoundaryCase bc, double k, const ReservoirParams& p) {
    constexpr double two_over_pi = M_2_PI;
    switch (bc) {
        case BoundaryCase::DD:
            return -two_over_pi / (k * k);
        case BoundaryCase::DN:
            return two_over_pi * (influx_coeff_dn(k, p) - 1.0) / (k * k);
        case BoundaryCase::ND:
            return two_over_pi / (k * k * k);
        case BoundaryCase::NN:
            return two_over_pi / (k * k * k) - two_over_pi * influx_coeff_nn(k, p) / (k * k);
    }
    throw std::logic_error("stationary_coeff: bad case");
}

}  // namespace dpflow

#endif  // DPFLOW_MODAL_HPP
