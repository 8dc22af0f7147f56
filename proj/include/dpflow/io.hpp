#ifndef DPFLOW_IO_HPP
#define DPFLOW_IO_HPP

/**
 * @file io.hpp
 * @brief Deterministic, locale-independent CSV output.
 *
 * Numbers are written with std::to_chars (shortest round-trip form), so the
 * same build produces byte-identical files for the same inputs regardless of
 * the process locale.
 */

#include <charconv>
#include <cstddef>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "dpflow/diagnostics.hpp"
#include "dpflow/series.hpp"
#include "dpflow/specfun.hpp"

namespace dpflow {

/// Shortest round-trip decimal form of v.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// CSV schema: index,k,residual
inline void write_roots_csv(std::ostream& os, const RootTable& table) {
    os << "index,k,residual\n";
    for (std::size_t i = 0; i < table.size(); ++i)
        os << i + 1 << ',' << format_double(table.roots[i]) << ','
           << format_double(table.residuals[i]) << '\n';
}

/// CSV schema: t,r,h2,method. Grids are interleaved per point when two are
/// given (same grid required).
inline void write_head_csv(std::ostream& os, const std::vector<const SolutionGrid*>& grids) {
    os << "t,r,h2,method\n";
    if (grids.empty()) return;
    const SolutionGrid& g0 = *grids.front();
    for (std::size_t it = 0; it < g0.times.size(); ++it)
        for (std::size_t ir = 0; ir < g0.radii.size(); ++ir)
            for (const SolutionGrid* g : grids)
                os << format_double(g->times[it]) << ',' << format_double(g->radii[ir]) << ','
                   << format_double(g->head_at(it, ir)) << ',' << g->method << '\n';
}

/// CSV schema: t,j2,method
inline void write_flux_csv(std::ostream& os, const std::vector<const SolutionGrid*>& grids) {
    os << "t,j2,method\n";
    if (grids.empty()) return;
    const SolutionGrid& g0 = *grids.front();
    for (std::size_t it = 0; it < g0.times.size(); ++it)
        for (const SolutionGrid* g : grids)
            os << format_double(g->times[it]) << ',' << format_double(g->flux[it]) << ','
               << g->method << '\n';
}

/// CSV schema: t,r,series,stehfest,abs_err,rel_err
inline void write_compare_csv(std::ostream& os, const std::vector<ComparisonPoint>& points) {
    os << "t,r,series,stehfest,abs_err,rel_err\n";
    for (const auto& pt : points)
        os << format_double(pt.t) << ',' << format_double(pt.r) << ',' << format_double(pt.series)
           << ',' << format_double(pt.stehfest) << ',' << format_double(pt.abs_err) << ','
           << format_double(pt.rel_err) << '\n';
}

/// CSV schema: n_roots,head_closed,head_raw,reference,dev_closed,dev_raw
inline void write_converge_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "n_roots,head_closed,head_raw,reference,dev_closed,dev_raw\n";
    for (const auto& row : rows)
        os << row.n_roots << ',' << format_double(row.head_closed) << ','
           << format_double(row.head_raw) << ',' << format_double(row.reference) << ','
           << format_double(row.dev_closed) << ',' << format_double(row.dev_raw) << '\n';
}

/// CSV schema: identity,r,closed,series,residual
inline void write_identities_csv(std::ostream& os, const std::vector<IdentityPoint>& pts) {
    os << "identity,r,closed,series,residual\n";
    for (const auto& pt : pts)
        os << pt.identity << ',' << format_double(pt.r) << ',' << format_double(pt.closed) << ','
           << format_double(pt.series) << ',' << format_double(pt.residual) << '\n';
}

/// Human-readable comparison summary, one line.
inline std::string summarize(const ComparisonReport& rep, double tol = 1e-3) {
    std::string s = rep.pass(tol) ? "PASS" : "FAIL";
    s += " max_rel_err=" + format_double(rep.max_rel_err);
    s += " max_abs_err=" + format_double(rep.max_abs_err);
    s += " at (t=" + format_double(rep.worst_t) + ", r=" + format_double(rep.worst_r) + ")";
    if (rep.has_flux) s += " max_flux_rel_err=" + format_double(rep.max_flux_rel_err);
    s += " case=" + std::string(to_string(rep.bc)) + " roots=" + std::to_string(rep.n_roots);
    return s;
}

}  // namespace dpflow

#endif  // DPFLOW_IO_HPP
