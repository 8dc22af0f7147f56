#ifndef DPFLOW_DIAGNOSTICS_HPP
#define DPFLOW_DIAGNOSTICS_HPP

/**
 * @file diagnostics.hpp
 * @brief Cross-validation of the series solutions against the Stehfest
 *        oracle, convergence studies, closed-formula identity residuals, and
 *        the truncated-inversion (no quasi-stationary term) comparison.
 */

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dpflow/laplace.hpp"
#include "dpflow/modal.hpp"
#include "dpflow/params.hpp"
#include "dpflow/series.hpp"
#include "dpflow/specfun.hpp"

namespace dpflow {

/// Relative errors are measured against max(|reference|, rel_floor) so the
/// metric stays finite where the head crosses zero (outer boundary for
/// DD/ND).
inline constexpr double rel_floor = 1e-3;

struct ComparisonReport {
    BoundaryCase bc = BoundaryCase::DD;
    ReservoirParams params;
    std::size_t n_times = 0;
    std::size_t n_radii = 0;
    std::size_t n_roots = 0;
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    double worst_t = 0.0;
    double worst_r = 0.0;
    std::vector<double> per_time_max_rel;  ///< error profile over the time grid
    bool has_flux = false;                 ///< flux compared (series defines it for DD/DN)
    double max_flux_rel_err = 0.0;

    bool pass(double tol = 1e-3) const {
        return max_rel_err <= tol && (!has_flux || max_flux_rel_err <= tol);
    }
};

struct ComparisonPoint {
    double t = 0.0, r = 0.0, series = 0.0, stehfest = 0.0, abs_err = 0.0, rel_err = 0.0;
};

/**
 * @brief Element-wise series-vs-Stehfest comparison over a (times x radii)
 *        grid; flux is compared where the series defines it (DD, DN).
 *
 * Fills `points` (row-major, t-major) when a non-null vector is supplied.
 */
inline ComparisonReport compare_methods(const ReservoirParams& p, const RootTable& table,
                                        const SeriesConfig& scfg, const StehfestConfig& lcfg,
                                        const std::vector<double>& times,
                                        const std::vector<double>& radii,
                                        std::vector<ComparisonPoint>* points = nullptr) {
    SeriesEvaluator ev(p, table, scfg);
    ComparisonReport rep;
    rep.bc = p.bc;
    rep.params = p;
    rep.n_times = times.size();
    rep.n_radii = radii.size();
    rep.n_roots = scfg.n_roots;
    rep.per_time_max_rel.reserve(times.size());
    if (points) points->reserve(times.size() * radii.size());
    for (double t : times) {
        double row_max = 0.0;
        for (double r : radii) {
            double hs = 0.0, hl = 0.0;
            try {
                hs = ev.head(r, t);
                hl = stehfest_head(p.bc, r, t, p, lcfg);
            } catch (const std::exception& e) {
                throw std::runtime_error("compare_methods at (t=" + std::to_string(t) +
                                         ", r=" + std::to_string(r) + "): " + e.what());
            }
            const double abs_err = std::abs(hs - hl);
            const double rel = abs_err / std::max(std::abs(hl), rel_floor);
            if (points) points->push_back({t, r, hs, hl, abs_err, rel});
            row_max = std::max(row_max, rel);
            if (abs_err > rep.max_abs_err) rep.max_abs_err = abs_err;
            if (rel > rep.max_rel_err) {
                rep.max_rel_err = rel;
                rep.worst_t = t;
                rep.worst_r = r;
            }
        }
        rep.per_time_max_rel.push_back(row_max);
    }
    if (!inner_is_neumann(p.bc)) {
        rep.has_flux = true;
        for (double t : times) {
            if (!(t > 0.0)) continue;
            const double js = ev.flux(t);
            const double jl = stehfest_flux(p.bc, t, p, lcfg);
            rep.max_flux_rel_err = std::max(
                rep.max_flux_rel_err, std::abs(js - jl) / std::max(std::abs(jl), rel_floor));
        }
    }
    return rep;
}

struct ConvergenceRow {
    std::size_t n_roots = 0;
    double head_closed = 0.0;
    double head_raw = 0.0;
    double reference = 0.0;  ///< Stehfest value at the probe
    double dev_closed = 0.0;
    double dev_raw = 0.0;
};

/**
 * @brief Head at one probe point for several truncations, with and without
 *        the closed stationary part, against the Stehfest reference.
 */
inline std::vector<ConvergenceRow> convergence_study(const ReservoirParams& p,
                                                     const RootTable& table, double r_probe,
                                                     double t_probe,
                                                     const std::vector<std::size_t>& root_counts,
                                                     const StehfestConfig& lcfg) {
    const double ref = stehfest_head(p.bc, r_probe, t_probe, p, lcfg);
    std::vector<ConvergenceRow> rows;
    rows.reserve(root_counts.size());
    for (std::size_t n : root_counts) {
        SeriesConfig scfg;
        scfg.n_roots = n;
        SeriesEvaluator ev(p, table, scfg);
        ConvergenceRow row;
        row.n_roots = n;
        row.head_closed = ev.head(r_probe, t_probe);
        row.head_raw = ev.head_raw(r_probe, t_probe);
        row.reference = ref;
        row.dev_closed = std::abs(row.head_closed - ref);
        row.dev_raw = std::abs(row.head_raw - ref);
        rows.push_back(row);
    }
    return rows;
}

struct IdentityPoint {
    std::string identity;
    double r = 0.0;
    double closed = 0.0;
    double series = 0.0;
    double residual = 0.0;
};

namespace detail {

/// Truncated series of the time-independent Hankel coefficients against one
/// closed profile. coeff(k) supplies the per-root stationary coefficient.
template <class Coeff, class Closed>
inline void identity_points(const std::string& name, const RootTable& table, std::size_t n,
                            const std::vector<double>& radii, Coeff&& coeff, Closed&& closed,
                            BoundaryCase bc, const ReservoirParams& p,
                            std::vector<IdentityPoint>& out) {
    constexpr double half_pi2 = M_PI * M_PI / 2.0;
    const double R = p.r_ext;
    for (double r : radii) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < n; ++i) {
            const double k = table.roots[i];
            const double j0k = bessel_j(0, k), j1k = bessel_j(1, k);
            const double j0R = bessel_j(0, k * R), j1R = bessel_j(1, k * R);
            double w = 0.0, kern = 0.0;
            switch (bc) {
                case BoundaryCase::DD:
                    w = j0R * j0R / (j0k * j0k - j0R * j0R);
                    kern = cross_i(0, 0, k, r, 1.0);
                    break;
                case BoundaryCase::DN:
                    w = j1R * j1R / (j0k * j0k - j1R * j1R);
                    kern = cross_i(0, 0, k, r, 1.0);
                    break;
                case BoundaryCase::ND:
                    w = j0R * j0R / (j1k * j1k - j0R * j0R);
                    kern = cross_i(1, 0, k, 1.0, r);
                    break;
                case BoundaryCase::NN:
                    w = j1R * j1R / (j1k * j1k - j1R * j1R);
                    kern = cross_i(1, 0, k, 1.0, r);
                    break;
            }
            acc.add(k * k * coeff(k) * w * kern);
        }
        IdentityPoint pt;
        pt.identity = name;
        pt.r = r;
        pt.closed = closed(r);
        pt.series = half_pi2 * acc.value();
        pt.residual = std::abs(pt.closed - pt.series);
        out.push_back(pt);
    }
}

}  // namespace detail

/**
 * @brief Residuals of the five closed-formula identities at the given
 *        truncation: DD log profile, DN profile, ND profile, NN no-flow
 *        profile, NN influx profile.
 *
 * Default sample radii: 2, sqrt(r_ext), r_ext/2.
 */
inline std::vector<IdentityPoint> identity_residuals(const ReservoirParams& p, std::size_t n_roots,
                                                     std::vector<double> radii = {}) {
    if (n_roots < 1) throw std::domain_error("identity_residuals: n_roots must be >= 1");
    if (radii.empty()) radii = {2.0, std::sqrt(p.r_ext), p.r_ext / 2.0};
    const double R = p.r_ext;
    std::vector<IdentityPoint> out;

    {
        auto t = find_roots(BoundaryCase::DD, R, n_roots);
        ReservoirParams q = p;
        q.bc = BoundaryCase::DD;
        detail::identity_points(
            "dd-log", t, n_roots, radii, [&](double k) { return stationary_coeff(q.bc, k, q); },
            [&](double r) { return 1.0 - std::log(r) / std::log(R); }, q.bc, q, out);
    }
    {
        auto t = find_roots(BoundaryCase::DN, R, n_roots);
        ReservoirParams q = p;
        q.bc = BoundaryCase::DN;
        detail::identity_points(
            "dn-profile", t, n_roots, radii, [&](double k) { return stationary_coeff(q.bc, k, q); },
            [&](double r) { return 1.0 - q.q_ext * std::log(r); }, q.bc, q, out);
    }
    {
        auto t = find_roots(BoundaryCase::ND, R, n_roots);
        ReservoirParams q = p;
        q.bc = BoundaryCase::ND;
        detail::identity_points(
            "nd-profile", t, n_roots, radii, [&](double k) { return stationary_coeff(q.bc, k, q); },
            [&](double r) { return std::log(R / r); }, q.bc, q, out);
    }
    {
        auto t = find_roots(BoundaryCase::NN, R, n_roots);
        ReservoirParams q = p;
        q.bc = BoundaryCase::NN;
        detail::identity_points(
            "nn-noflow", t, n_roots, radii, [&](double k) { return M_2_PI / (k * k * k); },
            [&](double r) { return detail::nn_noflow_profile(r, R); }, q.bc, q, out);
        detail::identity_points(
            "nn-influx", t, n_roots, radii,
            [&](double k) { return -M_2_PI * influx_coeff_nn(k, q) / (k * k); },
            [&](double r) { return -q.q_ext * detail::nn_influx_profile(r, R); }, q.bc, q, out);
    }
    return out;
}

/// Largest residual per identity name, in the order produced by
/// identity_residuals.
inline std::vector<std::pair<std::string, double>> identity_max_residuals(
    const std::vector<IdentityPoint>& pts) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& pt : pts) {
        if (out.empty() || out.back().first != pt.identity) out.push_back({pt.identity, 0.0});
        out.back().second = std::max(out.back().second, pt.residual);
    }
    return out;
}

struct CinelliRow {
    double t = 0.0;
    double head_with = 0.0;     ///< quasi-stationary terms included
    double head_without = 0.0;  ///< temporal terms removed (truncated-inversion form)
    double head_raw = 0.0;      ///< pure Hankel series, no correction at all
    double gap = 0.0;           ///< head_with - head_without
    double analytic = 0.0;      ///< exact temporal content of the mean mode
};

/**
 * @brief NN head with and without the quasi-stationary temporal terms.
 *
 * Without them the head saturates instead of growing linearly; the gap
 * equals the temporal part of the reservoir-mean mode.
 */
inline std::vector<CinelliRow> cinelli_gap(const ReservoirParams& p, const RootTable& table,
                                           const SeriesConfig& scfg, const std::vector<double>& times,
                                           double r = 1.0) {
    if (p.bc != BoundaryCase::NN) throw std::invalid_argument("cinelli_gap: NN case only");
    SeriesConfig with = scfg, without = scfg;
    with.include_temporal_terms = true;
    without.include_temporal_terms = false;
    SeriesEvaluator ev_with(p, table, with);
    SeriesEvaluator ev_without(p, table, without);
    const double c_off = nn_mean_head_offset(p);
    std::vector<CinelliRow> rows;
    rows.reserve(times.size());
    for (double t : times) {
        CinelliRow row;
        row.t = t;
        row.head_with = ev_with.head(r, t);
        row.head_without = ev_without.head(r, t);
        row.head_raw = ev_with.head_raw(r, t);
        row.gap = row.head_with - row.head_without;
        row.analytic = nn_mean_head(t, p) - c_off;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dpflow

#endif  // DPFLOW_DIAGNOSTICS_HPP
