#ifndef DPFLOW_LAPLACE_HPP
#define DPFLOW_LAPLACE_HPP

/**
 * @file laplace.hpp
 * @brief Exact Laplace-space solutions for the four boundary cases and the
 *        Stehfest numerical inversion used as the library's internal oracle.
 *
 * The head and flux transforms are ratios of modified-Bessel cross products
 * Psi with argument sqrt(eta(s)); they are evaluated from scaled factors so
 * large arguments never overflow. Stehfest weights and sums are carried in
 * long double: the alternating weights reach ~1e8 at N = 14 and the extra
 * mantissa keeps the cancellation noise well below the method's truncation
 * error.
 */

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpflow/params.hpp"
#include "dpflow/specfun.hpp"

namespace dpflow {

/**
 * @brief eta(s) = s [s omega (1-omega) + lambda] / [s (1-omega) + lambda].
 *
 * Reduces to s for omega = 1 and to omega s for lambda = 0; both limits are
 * routed explicitly because the general quotient degenerates there.
 */
inline double eta(double s, const ReservoirParams& p) {
    if (!(s > 0.0)) throw std::domain_error("eta: s must be > 0");
    if (p.omega == 1.0) return s;
    if (p.lambda == 0.0) return p.omega * s;
    return s * (s * p.omega * (1.0 - p.omega) + p.lambda) / (s * (1.0 - p.omega) + p.lambda);
}

/// Laplace transform of the ramp influx f(t) = -q_ext (1 - e^{-t/gamma}).
inline double f_hat(double s, const ReservoirParams& p) {
    if (!(s > 0.0)) throw std::domain_error("f_hat: s must be > 0");
    if (!outer_is_neumann(p.bc))
        throw std::invalid_argument("f_hat: influx is defined for DN and NN cases only");
    return -p.q_ext * (1.0 / s - 1.0 / (s + 1.0 / p.gamma));
}

/// Fracture head in Laplace space, h2_hat(r, s).
inline double head_hat(BoundaryCase bc, double r, double s, const ReservoirParams& p) {
    if (!(s > 0.0)) throw std::domain_error("head_hat: s must be > 0");
    if (!(r >= 1.0) || !(r <= p.r_ext))
        throw std::domain_error("head_hat: r must lie in [1, r_ext]");
    const double R = p.r_ext;
    const double x = std::sqrt(eta(s, p));
    switch (bc) {
        case BoundaryCase::DD:
            return scaled_ratio(cross_psi_scaled(0, 0, R, r, x), cross_psi_scaled(0, 0, R, 1.0, x)) / s;
        case BoundaryCase::DN: {
            const ScaledValue den = cross_psi_scaled(0, 1, 1.0, R, x);
            return scaled_ratio(cross_psi_scaled(1, 0, R, r, x), den) / s +
                   f_hat(s, p) / R * scaled_ratio(cross_psi_scaled(0, 0, 1.0, r, x), den) / x;
        }
        case BoundaryCase::ND:
            return scaled_ratio(cross_psi_scaled(0, 0, r, R, x), cross_psi_scaled(0, 1, R, 1.0, x)) /
                   (s * x);
        case BoundaryCase::NN: {
            const ScaledValue den = cross_psi_scaled(1, 1, 1.0, R, x);
            return scaled_ratio(cross_psi_scaled(0, 1, r, R, x), den) / (s * x) +
                   f_hat(s, p) / R * scaled_ratio(cross_psi_scaled(0, 1, r, 1.0, x), den) / x;
        }
    }
    throw std::logic_error("head_hat: bad case");
}

/// Bottomhole flux in Laplace space. ND and NN impose the rate, so 1/s exactly.
inline double flux_hat(BoundaryCase bc, double s, const ReservoirParams& p) {
    if (!(s > 0.0)) throw std::domain_error("flux_hat: s must be > 0");
    const double R = p.r_ext;
    switch (bc) {
        case BoundaryCase::ND:
        case BoundaryCase::NN:
            return 1.0 / s;
        case BoundaryCase::DD: {
            const double x = std::sqrt(eta(s, p));
            return x *
                   scaled_ratio(cross_psi_scaled(0, 1, R, 1.0, x), cross_psi_scaled(0, 0, 1.0, R, x)) /
                   s;
        }
        case BoundaryCase::DN: {
            const double x = std::sqrt(eta(s, p));
            const ScaledValue den = cross_psi_scaled(0, 1, 1.0, R, x);
            return x * scaled_ratio(cross_psi_scaled(1, 1, 1.0, R, x), den) / s -
                   f_hat(s, p) / R * scaled_ratio(cross_psi_scaled(0, 1, 1.0, 1.0, x), den);
        }
    }
    throw std::logic_error("flux_hat: bad case");
}

/// Matrix head in Laplace space, h1_hat = lambda h2_hat / [(1-omega)s + lambda].
inline double matrix_head_hat(BoundaryCase bc, double r, double s, const ReservoirParams& p) {
    if (p.omega == 1.0 && p.lambda == 0.0)
        throw std::invalid_argument("matrix_head_hat: matrix medium absent (omega=1, lambda=0)");
    if (p.lambda == 0.0) return 0.0;  // decoupled matrix stays at the initial head
    return p.lambda * head_hat(bc, r, s, p) / ((1.0 - p.omega) * s + p.lambda);
}

/**
 * @brief Stehfest inversion setup: even term count and precomputed weights.
 *
 * V_i = (-1)^{N/2+i} sum_k k^{N/2} (2k)! / [(N/2-k)! k! (k-1)! (i-k)! (2k-i)!]
 * over k from floor((i+1)/2) to min(i, N/2). Factorials up to 20! and the
 * inner sums (all terms positive) are exact in the 64-bit long double
 * mantissa.
 */
struct StehfestConfig {
    int n_terms = 14;
    std::vector<long double> weights;

    static StehfestConfig make(int n = 14) {
        if (n < 4 || n > 20 || n % 2 != 0)
            throw std::domain_error("StehfestConfig: n_terms must be even and in [4, 20]");
        StehfestConfig cfg;
        cfg.n_terms = n;
        cfg.weights.resize(n);
        long double fact[21];
        fact[0] = 1.0L;
        for (int i = 1; i <= 20; ++i) fact[i] = fact[i - 1] * i;
        const int half = n / 2;
        for (int i = 1; i <= n; ++i) {
            long double acc = 0.0L;
            const int klo = (i + 1) / 2;
            const int khi = std::min(i, half);
            for (int k = klo; k <= khi; ++k) {
                long double term = std::pow(static_cast<long double>(k), half) * fact[2 * k];
                term /= fact[half - k] * fact[k] * fact[k - 1] * fact[i - k] * fact[2 * k - i];
                acc += term;
            }
            cfg.weights[i - 1] = (((half + i) % 2) ? -1.0L : 1.0L) * acc;
        }
        return cfg;
    }

    /// Largest |V_i|; the cancellation scale of the inversion sum.
    long double max_abs_weight() const {
        long double m = 0.0L;
        for (long double v : weights) m = std::max(m, std::abs(v));
        return m;
    }
};

/**
 * @brief f(t) ~= (ln2/t) sum_i V_i F(i ln2/t).
 *
 * The callable receives the abscissa in long double; callables declared with
 * a double parameter narrow it implicitly.
 */
template <class F>
inline double stehfest_invert(F&& fhat, double t, const StehfestConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("stehfest_invert: t must be > 0");
    constexpr long double ln2 = 0.69314718055994530942L;
    const long double a = ln2 / t;
    long double acc = 0.0L;
    for (int i = 1; i <= cfg.n_terms; ++i) {
        const long double term = cfg.weights[i - 1] * static_cast<long double>(fhat(i * a));
        if (!std::isfinite(static_cast<double>(term)))
            throw std::runtime_error("stehfest_invert: non-finite transform value at term " +
                                     std::to_string(i));
        acc += term;
    }
    return static_cast<double>(acc * a);
}

/// Stehfest-inverted fracture head at (r, t).
inline double stehfest_head(BoundaryCase bc, double r, double t, const ReservoirParams& p,
                            const StehfestConfig& cfg) {
    return stehfest_invert([&](long double s) { return head_hat(bc, r, static_cast<double>(s), p); },
                           t, cfg);
}

/// Stehfest-inverted bottomhole flux at t.
inline double stehfest_flux(BoundaryCase bc, double t, const ReservoirParams& p,
                            const StehfestConfig& cfg) {
    return stehfest_invert([&](long double s) { return flux_hat(bc, static_cast<double>(s), p); }, t,
                           cfg);
}

/// Stehfest-inverted matrix head at (r, t).
inline double stehfest_matrix_head(BoundaryCase bc, double r, double t, const ReservoirParams& p,
                                   const StehfestConfig& cfg) {
    return stehfest_invert(
        [&](long double s) { return matrix_head_hat(bc, r, static_cast<double>(s), p); }, t, cfg);
}

}  // namespace dpflow

#endif  // DPFLOW_LAPLACE_HPP
