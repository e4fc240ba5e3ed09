#include "dwell/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "dwell/csv.hpp"
#include "dwell/errors.hpp"

namespace dwell {

namespace {

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw ConfigError("write to '" + path + "' failed");
}

// Runs body with the shared exception-to-exit-code mapping.
template <typename Body>
int guarded(const char* name, std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << name << ": config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidParams& e) {
        err << name << ": config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << name << ": solver error: " << e.what() << '\n';
        return kExitSolver;
    }
}

ResolvedRun resolve_for_sweep(const RunConfig& cfg) {
    ResolvedRun run = resolve(cfg);
    if (!cfg.lambda_min || !cfg.lambda_max) {
        throw ConfigError("sweep needs lambda_min and lambda_max (or a preset)");
    }
    try {
        validate(run.sweep, run.model, run.units);
    } catch (const InvalidParams& e) {
        throw ConfigError(e.what());
    }
    return run;
}

}  // namespace

std::string edges_path(const std::string& out_path) {
    std::string stem = out_path;
    if (stem.size() >= 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) stem.resize(stem.size() - 4);
    return stem + ".edges.csv";
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded("solve", err, [&] {
        const ResolvedRun run = resolve(cfg);
        const auto levels = solve_levels(run.model, run.units, run.levels, run.rootfind);
        CsvTable csv;
        csv.header = {"level", "energy_ev"};
        for (std::size_t i = 0; i < levels.size(); ++i) {
            csv.rows.push_back({static_cast<double>(i + 1), levels[i]});
        }
        emit(cfg.out, write_csv(csv), out);
        return int{kExitOk};
    });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded("sweep", err, [&] {
        const ResolvedRun run = resolve_for_sweep(cfg);
        if (cfg.effective && kind_of(run.model) != ModelKind::M1) {
            throw ConfigError("--effective applies to model m1 only");
        }
        const SpectrumTable table = sweep_levels(run.model, run.units, run.sweep, run.rootfind, cfg.threads);
        const auto eff = cfg.effective ? effective_levels(table, run.sweep)
                                       : std::vector<std::vector<double>>{};
        const std::string csv = write_csv(sweep_csv(table, eff));
        std::string svg;
        if (!cfg.svg.empty()) {
            svg = svg_line_chart(table.lambdas, table.levels, param_name(run.sweep.param), "E (eV)");
        }
        emit(cfg.out, csv, out);
        if (!cfg.svg.empty()) emit(cfg.svg, svg, out);
        return int{kExitOk};
    });
}

int cmd_detect(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded("detect", err, [&] {
        const ResolvedRun run = resolve_for_sweep(cfg);
        const CrossingReport report =
            detect_avoided_crossings(run.model, run.units, run.sweep, run.rootfind, run.criteria, cfg.threads);
        const std::string main = write_csv(crossings_csv(report.crossings));
        const std::string edges = write_csv(crossings_csv(report.edge_candidates));
        emit(cfg.out, main, out);
        if (!cfg.out.empty()) {
            emit(edges_path(cfg.out), edges, out);
        } else if (!report.edge_candidates.empty()) {
            err << "detect: " << report.edge_candidates.size()
                << " edge candidate(s) not listed; pass --out to write them\n";
        }
        return int{kExitOk};
    });
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded("compare", err, [&] {
        const ResolvedRun run = resolve(cfg);
        const auto analytic = solve_levels(run.model, run.units, run.levels, run.rootfind);
        const auto oracle = oracle_levels(run.model, run.units, run.levels, run.oracle);
        CsvTable csv;
        csv.header = {"level", "analytic_ev", "oracle_ev", "abs_diff_ev"};
        double worst = 0.0;
        for (std::size_t i = 0; i < analytic.size(); ++i) {
            const double d = std::abs(analytic[i] - oracle[i]);
            worst = std::max(worst, d);
            csv.rows.push_back({static_cast<double>(i + 1), analytic[i], oracle[i], d});
        }
        emit(cfg.out, write_csv(csv), out);
        if (worst > run.tolerance) {
            err << "compare: max |analytic - oracle| = " << format_number(worst) << " eV exceeds tolerance "
                << format_number(run.tolerance) << " eV\n";
            return int{kExitGate};
        }
        return int{kExitOk};
    });
}

}  // namespace dwell
