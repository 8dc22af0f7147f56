#ifndef DPFLOW_TESTS_ORACLE_REFERENCE_HPP
#define DPFLOW_TESTS_ORACLE_REFERENCE_HPP

// Test-side reference implementations, kept independent of the library code
// paths they check:
//  - 50-digit Bessel functions (Boost.Multiprecision + Boost.Math)
//  - Gauss-Kronrod quadrature for the convolution integrals
//  - the classical single-porosity series solutions with exp(-k^2 t) modes,
//    assembled from scratch

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dpflow/params.hpp"
#include "dpflow/specfun.hpp"

namespace oracle {

using mp50 = boost::multiprecision::cpp_bin_float_50;

inline double ref_j(int order, double x) {
    return static_cast<double>(boost::math::cyl_bessel_j(order, mp50(x)));
}
inline double ref_y(int order, double x) {
    return static_cast<double>(boost::math::cyl_neumann(order, mp50(x)));
}
inline double ref_i(int order, double x) {
    return static_cast<double>(boost::math::cyl_bessel_i(order, mp50(x)));
}
inline double ref_k(int order, double x) {
    return static_cast<double>(boost::math::cyl_bessel_k(order, mp50(x)));
}

inline double ref_bessel(dpflow::BesselKind kind, int order, double x) {
    switch (kind) {
        case dpflow::BesselKind::J: return ref_j(order, x);
        case dpflow::BesselKind::Y: return ref_y(order, x);
        case dpflow::BesselKind::I: return ref_i(order, x);
        case dpflow::BesselKind::K: return ref_k(order, x);
    }
    throw std::logic_error("ref_bessel");
}

/// First positive zero of J0 to 50 digits, rounded; reproduced by bisection
/// on the multiprecision series so the frozen constant below is self-checked.
inline double j0_first_zero_by_bisection() {
    mp50 lo = 2, hi = 3;
    for (int i = 0; i < 200; ++i) {
        const mp50 mid = (lo + hi) / 2;
        if (boost::math::cyl_bessel_j(0, mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<double>((lo + hi) / 2);
}

template <class F>
inline double gk_integrate(F&& f, double a, double b, double tol = 1e-12) {
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, tol, &err);
}

// ---------------------------------------------------------------------------
// Classical single-porosity series (eta(s) = s, modes exp(-k^2 t)).
// Stationary parts as in the general solutions; written independently.
// ---------------------------------------------------------------------------

struct ClassicalSeries {
    dpflow::BoundaryCase bc;
    double R;
    double qext;
    double gamma;
    std::vector<double> roots;

    ClassicalSeries(dpflow::BoundaryCase bc_, double R_, double q_, double g_,
                    const dpflow::RootTable& table, std::size_t n)
        : bc(bc_), R(R_), qext(q_), gamma(g_),
          roots(table.roots.begin(), table.roots.begin() + n) {}

    double j(int o, double x) const { return dpflow::bessel_j(o, x); }
    double y(int o, double x) const { return dpflow::bessel_y(o, x); }

    double kernel(double k, double r) const {
        if (bc == dpflow::BoundaryCase::DD || bc == dpflow::BoundaryCase::DN)
            return j(0, k * r) * y(0, k) - y(0, k * r) * j(0, k);
        return j(1, k) * y(0, k * r) - y(1, k) * j(0, k * r);
    }

    double weight(double k) const {
        const double j0k = j(0, k), j1k = j(1, k), j0R = j(0, k * R), j1R = j(1, k * R);
        switch (bc) {
            case dpflow::BoundaryCase::DD: return j0R * j0R / (j0k * j0k - j0R * j0R);
            case dpflow::BoundaryCase::DN: return j1R * j1R / (j0k * j0k - j1R * j1R);
            case dpflow::BoundaryCase::ND: return j0R * j0R / (j1k * j1k - j0R * j0R);
            case dpflow::BoundaryCase::NN: return j1R * j1R / (j1k * j1k - j1R * j1R);
        }
        throw std::logic_error("weight");
    }

    // e^{-k^2 t} R1, Q2 and the per-case transient coefficient
    double transient(double k, double t) const {
        const double r1 = -std::exp(-k * k * t) / (k * k);
        switch (bc) {
            case dpflow::BoundaryCase::DD:
                return -(2.0 / M_PI) * r1;
            case dpflow::BoundaryCase::DN: {
                const double cb = qext * j(0, k) / (R * k * j(1, k * R));
                return (2.0 / M_PI) * ((cb - 1.0) * r1 - cb * q2(k, t));
            }
            case dpflow::BoundaryCase::ND:
                return (2.0 / (M_PI * k)) * r1;
            case dpflow::BoundaryCase::NN: {
                const double cn = qext * j(1, k) / (R * k * j(1, k * R));
                return (2.0 / (M_PI * k)) * r1 - (2.0 / M_PI) * cn * (r1 - q2(k, t));
            }
        }
        throw std::logic_error("transient");
    }

    double q2(double k, double t) const {
        const double d = 1.0 / gamma - k * k;
        if (std::abs(gamma * d) < 1e-12) return t * std::exp(-t / gamma);
        return (std::exp(-k * k * t) - std::exp(-t / gamma)) / d;
    }

    double closed(double r, double t) const {
        const double R2 = R * R;
        switch (bc) {
            case dpflow::BoundaryCase::DD: return 1.0 - std::log(r) / std::log(R);
            case dpflow::BoundaryCase::DN: return 1.0 - qext * std::log(r);
            case dpflow::BoundaryCase::ND: return std::log(R / r);
            case dpflow::BoundaryCase::NN: {
                const double nf = r * r / (2.0 * (R2 - 1.0)) - R2 * std::log(r) / (R2 - 1.0) -
                                  (3.0 * R2 * R2 - 4.0 * R2 * R2 * std::log(R) - 2.0 * R2 - 1.0) /
                                      (4.0 * (R2 - 1.0) * (R2 - 1.0));
                const double fl = r * r / (2.0 * (R2 - 1.0)) - std::log(r) / (R2 - 1.0) -
                                  (R2 * R2 + 2.0 * R2 - 4.0 * R2 * std::log(R) - 3.0) /
                                      (4.0 * (R2 - 1.0) * (R2 - 1.0));
                const double mean = 2.0 / (R2 - 1.0) *
                                    ((1.0 - qext) * t +
                                     qext * gamma * (1.0 - std::exp(-t / gamma)));
                return nf - qext * fl + mean;
            }
        }
        throw std::logic_error("closed");
    }

    double head(double r, double t) const {
        double sum = 0.0;
        for (double k : roots)
            sum += k * k * transient(k, t) * weight(k) * kernel(k, r);
        return closed(r, t) + 0.5 * M_PI * M_PI * sum;
    }

    double flux(double t) const {
        if (bc == dpflow::BoundaryCase::ND || bc == dpflow::BoundaryCase::NN) return 1.0;
        double sum = 0.0;
        for (double k : roots) {
            const double i01 = j(0, k) * y(1, k) - y(0, k) * j(1, k);
            sum += k * k * k * transient(k, t) * i01 * weight(k);
        }
        const double stat = bc == dpflow::BoundaryCase::DD ? 1.0 / std::log(R) : qext;
        return stat - 0.5 * M_PI * M_PI * sum;
    }
};

}  // namespace oracle

#endif  // DPFLOW_TESTS_ORACLE_REFERENCE_HPP
