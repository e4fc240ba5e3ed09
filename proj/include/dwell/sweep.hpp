#pragma once

// Parameter sweeps of the lowest levels and avoided-crossing detection.

#include <optional>
#include <string_view>
#include <vector>

#include "dwell/models.hpp"
#include "dwell/rootfind.hpp"

namespace dwell {

enum class SweepParam { B, C, Hw2 };

std::string_view param_name(SweepParam p);

struct SweepSpec {
    SweepParam param = SweepParam::B;
    double lambda_min = 0.0;
    double lambda_max = 1.0;
    int steps = 2;
    int n_levels = 2;
};

struct SpectrumTable {
    std::vector<double> lambdas;
    std::vector<std::vector<double>> levels;  // [step][level], ascending per row
    ModelParams model;                        // base parameters (swept field as given)
    UnitsConfig units;
};

struct AvoidedCrossing {
    int level_index = 0;  // gap between E_n and E_{n+1}, 1-based n
    double lambda_star = 0.0;
    double gap = 0.0;
    double e_mid = 0.0;
};

// A coarse-grid local minimum of a gap curve counts as an avoided crossing
// when its gap is below `gap_ceiling` (default: 20% of the median adjacent gap)
// or when it is a deep dip: gap <= depth_ratio * the lower of the two
// surrounding gap maxima (maxima taken up to the neighbouring minima or the
// window ends).
struct CrossingCriteria {
    std::optional<double> gap_ceiling;
    double depth_ratio = 0.5;
};

struct CrossingReport {
    std::vector<AvoidedCrossing> crossings;        // interior, refined
    std::vector<AvoidedCrossing> edge_candidates;  // gap still falling at a window end
    double gap_ceiling = 0.0;
};

// Model with the swept field set to lambda. Throws InvalidParams when the
// parameter does not belong to the model variant.
ModelParams with_lambda(const ModelParams& model, SweepParam param, double lambda);

void validate(const SweepSpec& spec, const ModelParams& model, const UnitsConfig& units);

// Uniform grid lambda_i = lambda_min + i (lambda_max - lambda_min)/(steps - 1).
std::vector<double> sweep_grid(const SweepSpec& spec);

// Each row solved independently; `threads` = 0 picks hardware concurrency.
// Output does not depend on the thread count.
SpectrumTable sweep_levels(const ModelParams& model, const UnitsConfig& units, const SweepSpec& spec,
                           const RootfindConfig& cfg = {}, unsigned threads = 0);

std::vector<std::vector<double>> gap_curves(const SpectrumTable& table);

// 20% of the median adjacent gap over the table.
double default_gap_ceiling(const SpectrumTable& table);

CrossingReport detect_avoided_crossings(const ModelParams& model, const UnitsConfig& units,
                                        const SweepSpec& spec, const RootfindConfig& cfg = {},
                                        const CrossingCriteria& criteria = {}, unsigned threads = 0);

// Same, reusing a table already produced by sweep_levels for `spec`.
CrossingReport detect_avoided_crossings(const SpectrumTable& table, const SweepSpec& spec,
                                        const RootfindConfig& cfg = {},
                                        const CrossingCriteria& criteria = {});

// E'_n = u (a + b)^2 E_n, M1 sweeps over b only.
std::vector<std::vector<double>> effective_levels(const SpectrumTable& table, const SweepSpec& spec);

}  // namespace dwell
