#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dwell/models.hpp"

namespace dwell {

using ScalarFn = std::function<double(double)>;

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

struct RootfindConfig {
    double e_min = 1e-9;
    double e_max = 10.0;
    int coarse_steps = 512;
    int max_subdivision_depth = 12;
    double tol_abs = 1e-10;
    double tol_rel = 1e-14;
};

void validate(const RootfindConfig& cfg);

// Sorted, disjoint brackets of every sign change of f on [e_min, e_max].
// Cells where f approaches zero and turns back without changing sign are
// probed for a hidden close pair of roots. With expected_count the grid is
// refined until at least that many brackets exist; CountMismatch is thrown
// when the depth budget runs out first.
std::vector<Bracket> scan_brackets(const ScalarFn& f, const RootfindConfig& cfg,
                                   std::optional<int> expected_count = std::nullopt);

// Brent's method inside the bracket, stopping at width max(tol_abs, tol_rel*|E|).
double refine_root(const ScalarFn& f, const Bracket& bracket, const RootfindConfig& cfg);

// First n_levels zeros of the model's characteristic function, ascending.
// The search window starts at cfg.e_min and at an upper bound that provably
// holds n_levels levels; it is doubled (up to 1e4 eV) if brackets are missed.
std::vector<double> solve_levels(const ModelParams& model, const UnitsConfig& units, int n_levels,
                                 const RootfindConfig& cfg = {});

inline constexpr double kEnergyCap = 1e4;

}  // namespace dwell
