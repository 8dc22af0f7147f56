// dpflow command-line front end: head/flux curves, root tables, method
// comparisons, convergence studies, and closed-formula identity checks, all
// emitted as CSV (plus an optional gnuplot script).

#include <CLI11.hpp>

#include <cstddef>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "dpflow/diagnostics.hpp"
#include "dpflow/io.hpp"
#include "dpflow/laplace.hpp"
#include "dpflow/params.hpp"
#include "dpflow/series.hpp"
#include "dpflow/specfun.hpp"

namespace {

struct RunConfig {
    std::string case_name = "dd";
    double omega = 0.1;
    double lambda = 1e-3;
    double rext = 100.0;
    double qext = 0.0;
    double gamma = 1e-3;
    std::size_t n_roots = 200;
    int stehfest_n = 14;
    double t_start = 1.0;
    double t_stop = 1e6;
    std::size_t t_count = 20;
    bool t_log = true;
    std::size_t r_count = 20;
    std::string method = "series";
    bool no_closed_form = false;
    bool no_temporal_terms = false;
    std::string out = "-";
    std::string plot_script;
    // converge probes
    double probe_r = 1.0;
    double probe_t = 10.0;
    std::vector<std::size_t> counts = {100, 1000, 10000};

    dpflow::ReservoirParams params() const {
        dpflow::ReservoirParams p;
        p.omega = omega;
        p.lambda = lambda;
        p.r_ext = rext;
        p.q_ext = qext;
        p.gamma = gamma;
        p.bc = dpflow::boundary_case_from_string(case_name);
        p.validate();
        return p;
    }

    dpflow::SeriesConfig series_config() const {
        dpflow::SeriesConfig cfg;
        cfg.n_roots = n_roots;
        cfg.use_closed_form = !no_closed_form;
        cfg.include_temporal_terms = !no_temporal_terms;
        return cfg;
    }

    std::vector<double> times() const {
        return t_log ? dpflow::log_grid(t_start, t_stop, t_count)
                     : dpflow::linear_grid(t_start, t_stop, t_count);
    }

    std::vector<double> radii() const { return dpflow::log_grid(1.0, rext, r_count); }
};

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--case", cfg.case_name, "boundary case: dd, dn, nd, nn")
        ->check(CLI::IsMember({"dd", "dn", "nd", "nn", "DD", "DN", "ND", "NN"}))
        ->capture_default_str();
    cmd->add_option("--omega", cfg.omega, "fracture storage coefficient, (0,1]")
        ->capture_default_str();
    cmd->add_option("--lambda", cfg.lambda, "interporosity transmissibility, >= 0")
        ->capture_default_str();
    cmd->add_option("--rext", cfg.rext, "dimensionless external radius, > 1")
        ->capture_default_str();
    cmd->add_option("--qext", cfg.qext, "outer influx factor (DN/NN)")->capture_default_str();
    cmd->add_option("--gamma", cfg.gamma, "ramp slope parameter (DN/NN)")->capture_default_str();
    cmd->add_option("--roots", cfg.n_roots, "series truncation / table size")
        ->capture_default_str();
    cmd->add_option("--stehfest-n", cfg.stehfest_n, "Stehfest term count (even, 4..20)")
        ->capture_default_str();
    cmd->add_option("--t-start", cfg.t_start, "first time")->capture_default_str();
    cmd->add_option("--t-stop", cfg.t_stop, "last time")->capture_default_str();
    cmd->add_option("--t-count", cfg.t_count, "number of times")->capture_default_str();
    cmd->add_flag("--t-log,!--t-linear", cfg.t_log, "log-spaced times (default)")
        ->capture_default_str();
    cmd->add_option("--r-count", cfg.r_count, "number of radii (log-spaced over [1, rext])")
        ->capture_default_str();
    cmd->add_option("--method", cfg.method, "series, stehfest, or both")
        ->check(CLI::IsMember({"series", "stehfest", "both"}))
        ->capture_default_str();
    cmd->add_flag("--no-closed-form", cfg.no_closed_form,
                  "keep the stationary part as a truncated series")
        ->capture_default_str();
    cmd->add_flag("--no-temporal-terms", cfg.no_temporal_terms,
                  "NN: drop the quasi-stationary temporal terms")
        ->capture_default_str();
    cmd->add_option("--out", cfg.out, "output path ('-' for stdout)")->capture_default_str();
    cmd->add_option("--plot-script", cfg.plot_script,
                    "also write a gnuplot script to this path");
    cmd->set_config("--config", "", "read options from an INI key=value file");
}

struct OutputFile {
    explicit OutputFile(const std::string& path) {
        if (path != "-") {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file.is_open() ? file : std::cout; }
    std::ofstream file;
};

void write_plot_script(const RunConfig& cfg, const std::string& kind) {
    if (cfg.plot_script.empty()) return;
    std::ofstream ps(cfg.plot_script, std::ios::binary);
    if (!ps) throw std::runtime_error("cannot open plot script path: " + cfg.plot_script);
    const std::string src = cfg.out == "-" ? std::string("data.csv") : cfg.out;
    ps << "# gnuplot script generated by dpflow " << kind << "\n";
    ps << "set datafile separator ','\n";
    ps << "set key autotitle columnhead\n";
    if (kind == "head") {
        ps << "set logscale x\nset xlabel 'r'\nset ylabel 'h2'\n";
        ps << "plot '" << src << "' using 2:3 with points pt 7 ps 0.4\n";
    } else if (kind == "flux") {
        ps << "set logscale xy\nset xlabel 't'\nset ylabel 'j2'\n";
        ps << "plot '" << src << "' using 1:2 with linespoints\n";
    } else if (kind == "roots") {
        ps << "set xlabel 'index'\nset ylabel 'k'\n";
        ps << "plot '" << src << "' using 1:2 with points pt 7 ps 0.4\n";
    } else if (kind == "compare") {
        ps << "set logscale x\nset xlabel 't'\nset ylabel 'rel err'\n";
        ps << "plot '" << src << "' using 1:6 with points pt 7 ps 0.4\n";
    } else if (kind == "converge") {
        ps << "set logscale xy\nset xlabel 'roots'\nset ylabel 'deviation'\n";
        ps << "plot '" << src << "' using 1:5 with linespoints, '' using 1:6 with linespoints\n";
    } else if (kind == "identities") {
        ps << "set xlabel 'r'\nset ylabel 'residual'\nset logscale y\n";
        ps << "plot '" << src << "' using 2:5 with points pt 7 ps 0.4\n";
    }
}

int cmd_head(const RunConfig& cfg) {
    auto p = cfg.params();
    auto times = cfg.times();
    auto radii = cfg.radii();
    std::vector<dpflow::SolutionGrid> grids;
    if (cfg.method == "series" || cfg.method == "both") {
        auto table = dpflow::find_roots(p.bc, p.r_ext, cfg.n_roots);
        grids.push_back(
            dpflow::evaluate_series_grid(p, table, cfg.series_config(), times, radii, false));
    }
    if (cfg.method == "stehfest" || cfg.method == "both") {
        auto lcfg = dpflow::StehfestConfig::make(cfg.stehfest_n);
        grids.push_back(dpflow::evaluate_stehfest_grid(p, lcfg, times, radii, false));
    }
    std::vector<const dpflow::SolutionGrid*> ptrs;
    for (const auto& g : grids) ptrs.push_back(&g);
    OutputFile out(cfg.out);
    dpflow::write_head_csv(out.stream(), ptrs);
    write_plot_script(cfg, "head");
    return 0;
}

int cmd_flux(const RunConfig& cfg) {
    auto p = cfg.params();
    auto times = cfg.times();
    if (times.front() <= 0.0) throw std::domain_error("flux requires t > 0");
    std::vector<dpflow::SolutionGrid> grids;
    if (cfg.method == "series" || cfg.method == "both") {
        auto table = dpflow::find_roots(p.bc, p.r_ext, cfg.n_roots);
        dpflow::SeriesEvaluator ev(p, table, cfg.series_config());
        dpflow::SolutionGrid g;
        g.method = "series";
        g.times = times;
        for (double t : times) g.flux.push_back(ev.flux(t));
        grids.push_back(std::move(g));
    }
    if (cfg.method == "stehfest" || cfg.method == "both") {
        auto lcfg = dpflow::StehfestConfig::make(cfg.stehfest_n);
        dpflow::SolutionGrid g;
        g.method = "stehfest";
        g.times = times;
        for (double t : times) g.flux.push_back(dpflow::stehfest_flux(p.bc, t, p, lcfg));
        grids.push_back(std::move(g));
    }
    std::vector<const dpflow::SolutionGrid*> ptrs;
    for (const auto& g : grids) ptrs.push_back(&g);
    OutputFile out(cfg.out);
    dpflow::write_flux_csv(out.stream(), ptrs);
    write_plot_script(cfg, "flux");
    return 0;
}

int cmd_roots(const RunConfig& cfg) {
    auto p = cfg.params();
    auto table = dpflow::find_roots(p.bc, p.r_ext, cfg.n_roots);
    OutputFile out(cfg.out);
    dpflow::write_roots_csv(out.stream(), table);
    write_plot_script(cfg, "roots");
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    auto p = cfg.params();
    auto table = dpflow::find_roots(p.bc, p.r_ext, cfg.n_roots);
    auto lcfg = dpflow::StehfestConfig::make(cfg.stehfest_n);
    std::vector<dpflow::ComparisonPoint> points;
    auto rep = dpflow::compare_methods(p, table, cfg.series_config(), lcfg, cfg.times(),
                                       cfg.radii(), &points);
    OutputFile out(cfg.out);
    dpflow::write_compare_csv(out.stream(), points);
    write_plot_script(cfg, "compare");
    std::cerr << dpflow::summarize(rep) << '\n';
    return 0;
}

int cmd_converge(const RunConfig& cfg) {
    auto p = cfg.params();
    std::size_t max_count = cfg.n_roots;
    for (std::size_t c : cfg.counts) max_count = std::max(max_count, c);
    auto table = dpflow::find_roots(p.bc, p.r_ext, max_count);
    auto lcfg = dpflow::StehfestConfig::make(cfg.stehfest_n);
    auto rows = dpflow::convergence_study(p, table, cfg.probe_r, cfg.probe_t, cfg.counts, lcfg);
    OutputFile out(cfg.out);
    dpflow::write_converge_csv(out.stream(), rows);
    write_plot_script(cfg, "converge");
    return 0;
}

int cmd_identities(const RunConfig& cfg) {
    auto p = cfg.params();
    auto pts = dpflow::identity_residuals(p, cfg.n_roots);
    OutputFile out(cfg.out);
    dpflow::write_identities_csv(out.stream(), pts);
    write_plot_script(cfg, "identities");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-porosity radial flow: exact series solutions and Stehfest cross-checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto* head = app.add_subcommand("head", "hydraulic head over a (t, r) grid; CSV t,r,h2,method");
    auto* flux = app.add_subcommand("flux", "bottomhole flux over t; CSV t,j2,method");
    auto* roots = app.add_subcommand("roots", "Hankel root table; CSV index,k,residual");
    auto* compare =
        app.add_subcommand("compare", "series vs Stehfest; CSV t,r,series,stehfest,abs_err,rel_err");
    auto* converge = app.add_subcommand("converge",
                                        "head vs truncation at a probe point; CSV "
                                        "n_roots,head_closed,head_raw,reference,dev_closed,dev_raw");
    auto* identities = app.add_subcommand(
        "identities", "closed-formula identity residuals; CSV identity,r,closed,series,residual");
    auto* show = app.add_subcommand("show-config", "print the effective configuration as INI");

    for (CLI::App* cmd : {head, flux, roots, compare, converge, identities, show})
        add_common_options(cmd, cfg);
    for (CLI::App* cmd : {converge}) {
        cmd->add_option("--probe-r", cfg.probe_r, "probe radius")->capture_default_str();
        cmd->add_option("--probe-t", cfg.probe_t, "probe time")->capture_default_str();
        cmd->add_option("--counts", cfg.counts, "root counts to evaluate")
            ->delimiter(',')
            ->capture_default_str();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (show->parsed()) {
            std::cout << show->config_to_str(true, false);
            return 0;
        }
        if (head->parsed()) return cmd_head(cfg);
        if (flux->parsed()) return cmd_flux(cfg);
        if (roots->parsed()) return cmd_roots(cfg);
        if (compare->parsed()) return cmd_compare(cfg);
        if (converge->parsed()) return cmd_converge(cfg);
        if (identities->parsed()) return cmd_identities(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
