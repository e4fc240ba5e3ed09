#include "dwell/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

double gap_at(const ModelParams& model, const UnitsConfig& units, const SweepSpec& spec,
              const RootfindConfig& cfg, int level_index, double lambda, double* e_mid) {
    const std::vector<double> lv =
        solve_levels(with_lambda(model, spec.param, lambda), units, level_index + 1, cfg);
    const double lower = lv[static_cast<std::size_t>(level_index - 1)];
    const double upper = lv[static_cast<std::size_t>(level_index)];
    if (e_mid) *e_mid = 0.5 * (lower + upper);
    return upper - lower;
}

AvoidedCrossing refine_crossing(const SpectrumTable& table, const SweepSpec& spec,
                                const RootfindConfig& cfg, int gap_col, std::size_t i) {
    const int n = gap_col + 1;
    const double width_tol = (spec.lambda_max - spec.lambda_min) * 1e-5;
    const std::vector<double>& lam = table.lambdas;

    AvoidedCrossing best;
    best.level_index = n;
    best.lambda_star = lam[i];
    best.gap = table.levels[i][static_cast<std::size_t>(n)] - table.levels[i][static_cast<std::size_t>(gap_col)];
    best.e_mid = 0.5 * (table.levels[i][static_cast<std::size_t>(n)] + table.levels[i][static_cast<std::size_t>(gap_col)]);

    auto probe = [&](double lambda) {
        double mid = 0.0;
        const double g = gap_at(table.model, table.units, spec, cfg, n, lambda, &mid);
        if (g < best.gap) best = {n, lambda, g, mid};
        return g;
    };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lam[i - 1];
    double b = lam[i + 1];
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double g1 = probe(x1);
    double g2 = probe(x2);
    while (b - a > width_tol) {
        if (g1 < g2) {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - inv_phi * (b - a);
            g1 = probe(x1);
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + inv_phi * (b - a);
            g2 = probe(x2);
        }
    }
    if (!(best.gap > 0.0)) {
        throw SolverError("detect_avoided_crossings: non-positive gap at lambda = " +
                          std::to_string(best.lambda_star));
    }
    return best;
}

}  // namespace

std::string_view param_name(SweepParam p) {
    switch (p) {
        case SweepParam::B: return "b";
        case SweepParam::C: return "c";
        case SweepParam::Hw2: return "hw2";
    }
    return "?";
}

ModelParams with_lambda(const ModelParams& model, SweepParam param, double lambda) {
    ModelParams out = model;
    bool ok = false;
    std::visit(
        [&](auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, M1Params>) {
                if (param == SweepParam::B) { p.b = lambda; ok = true; }
            } else if constexpr (std::is_same_v<T, M2Params>) {
                if (param == SweepParam::C) { p.c = lambda; ok = true; }
            } else {
                if (param == SweepParam::Hw2) { p.hw2 = lambda; ok = true; }
            }
        },
        out);
    if (!ok) {
        throw InvalidParams("sweep parameter '" + std::string(param_name(param)) +
                            "' does not apply to model " + std::string(model_name(kind_of(model))));
    }
    return out;
}

void validate(const SweepSpec& spec, const ModelParams& model, const UnitsConfig& units) {
    if (!(spec.lambda_min < spec.lambda_max)) throw InvalidParams("sweep: requires lambda_min < lambda_max");
    if (spec.steps < 2) throw InvalidParams("sweep: requires steps >= 2");
    if (spec.n_levels < 2) throw InvalidParams("sweep: requires n_levels >= 2");
    // The parameter space is an interval for every model, so both ends suffice.
    validate(with_lambda(model, spec.param, spec.lambda_min), units);
    validate(with_lambda(model, spec.param, spec.lambda_max), units);
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
    std::vector<double> lam(static_cast<std::size_t>(spec.steps));
    const double step = (spec.lambda_max - spec.lambda_min) / static_cast<double>(spec.steps - 1);
    for (int i = 0; i < spec.steps; ++i) {
        lam[static_cast<std::size_t>(i)] =
            i == spec.steps - 1 ? spec.lambda_max : spec.lambda_min + step * static_cast<double>(i);
    }
    return lam;
}

SpectrumTable sweep_levels(const ModelParams& model, const UnitsConfig& units, const SweepSpec& spec,
                           const RootfindConfig& cfg, unsigned threads) {
    validate(spec, model, units);
    SpectrumTable table;
    table.model = model;
    table.units = units;
    table.lambdas = sweep_grid(spec);
    const std::size_t rows = table.lambdas.size();
    table.levels.assign(rows, {});
    std::vector<std::exception_ptr> errors(rows);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows; i = next++) {
            try {
                table.levels[i] =
                    solve_levels(with_lambda(model, spec.param, table.lambdas[i]), units, spec.n_levels, cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned count = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    count = static_cast<unsigned>(std::min<std::size_t>(count, rows));
    if (count <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < rows; ++i) {
        if (!errors[i]) continue;
        std::string detail;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        throw SolverError("sweep: grid point " + std::to_string(i) + " (" +
                          std::string(param_name(spec.param)) + " = " +
                          std::to_string(table.lambdas[i]) + "): " + detail);
    }
    return table;
}

std::vector<std::vector<double>> gap_curves(const SpectrumTable& table) {
    std::vector<std::vector<double>> gaps;
    gaps.reserve(table.levels.size());
    for (const auto& row : table.levels) {
        std::vector<double> g;
        for (std::size_t n = 0; n + 1 < row.size(); ++n) g.push_back(row[n + 1] - row[n]);
        gaps.push_back(std::move(g));
    }
    return gaps;
}

double default_gap_ceiling(const SpectrumTable& table) {
    std::vector<double> all;
    for (const auto& row : gap_curves(table)) all.insert(all.end(), row.begin(), row.end());
    if (all.empty()) return 0.0;
    std::sort(all.begin(), all.end());
    const std::size_t m = all.size();
    const double median = m % 2 == 1 ? all[m / 2] : 0.5 * (all[m / 2 - 1] + all[m / 2]);
    return 0.2 * median;
}

CrossingReport detect_avoided_crossings(const SpectrumTable& table, const SweepSpec& spec,
                                        const RootfindConfig& cfg, const CrossingCriteria& criteria) {
    CrossingReport report;
    report.gap_ceiling = criteria.gap_ceiling ? *criteria.gap_ceiling : default_gap_ceiling(table);
    const auto gaps = gap_curves(table);
    const std::size_t rows = gaps.size();
    if (rows < 2) return report;
    const std::size_t cols = gaps.front().size();

    for (std::size_t n = 0; n < cols; ++n) {
        auto g = [&](std::size_t i) { return gaps[i][n]; };
        auto edge = [&](std::size_t i) {
            const auto& row = table.levels[i];
            return AvoidedCrossing{static_cast<int>(n + 1), table.lambdas[i], g(i), 0.5 * (row[n] + row[n + 1])};
        };
        if (g(0) < g(1) && g(0) < report.gap_ceiling) report.edge_candidates.push_back(edge(0));
        if (g(rows - 1) < g(rows - 2) && g(rows - 1) < report.gap_ceiling) {
            report.edge_candidates.push_back(edge(rows - 1));
        }
        std::vector<std::size_t> minima;
        for (std::size_t i = 1; i + 1 < rows; ++i) {
            if (g(i) < g(i - 1) && g(i) <= g(i + 1)) minima.push_back(i);
        }
        for (std::size_t m = 0; m < minima.size(); ++m) {
            const std::size_t i = minima[m];
            const std::size_t from = m == 0 ? 0 : minima[m - 1];
            const std::size_t to = m + 1 == minima.size() ? rows - 1 : minima[m + 1];
            double left_peak = 0.0;
            double right_peak = 0.0;
            for (std::size_t j = from; j <= i; ++j) left_peak = std::max(left_peak, g(j));
            for (std::size_t j = i; j <= to; ++j) right_peak = std::max(right_peak, g(j));
            const bool below_ceiling = g(i) < report.gap_ceiling;
            const bool deep = g(i) <= criteria.depth_ratio * std::min(left_peak, right_peak);
            if (!below_ceiling && !deep) continue;
            report.crossings.push_back(refine_crossing(table, spec, cfg, static_cast<int>(n), i));
        }
    }
    auto by_lambda = [](const AvoidedCrossing& l, const AvoidedCrossing& r) {
        return l.lambda_star != r.lambda_star ? l.lambda_star < r.lambda_star : l.level_index < r.level_index;
    };
    std::sort(report.crossings.begin(), report.crossings.end(), by_lambda);
    std::sort(report.edge_candidates.begin(), report.edge_candidates.end(), by_lambda);
    return report;
}

CrossingReport detect_avoided_crossings(const ModelParams& model, const UnitsConfig& units,
                                        const SweepSpec& spec, const RootfindConfig& cfg,
                                        const CrossingCriteria& criteria, unsigned threads) {
    return detect_avoided_crossings(sweep_levels(model, units, spec, cfg, threads), spec, cfg, criteria);
}

std::vector<std::vector<double>> effective_levels(const SpectrumTable& table, const SweepSpec& spec) {
    const auto* m1 = std::get_if<M1Params>(&table.model);
    if (!m1 || spec.param != SweepParam::B) {
        throw InvalidParams("effective_levels: defined for m1 sweeps over b only");
    }
    std::vector<std::vector<double>> out = table.levels;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double width = m1->a + table.lambdas[i];
        for (double& e : out[i]) e *= table.units.u * width * width;
    }
    return out;
}

}  // namespace dwell
