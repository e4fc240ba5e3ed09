#pragma once

// Finite-difference ground truth for the models: a uniform-grid
// central-difference Hamiltonian with hard walls, Sturm-sequence bisection
// for its lowest eigenvalues, optional Richardson extrapolation, and a
// two-sided shooting check of Wronskian constancy.

#include <optional>
#include <vector>

#include "dwell/models.hpp"

namespace dwell {

struct OracleConfig {
    int n_points = 0;  // interior grid points; 0 selects 4000 (m1, m2) or 6000 (m3, m4)
    double turning_point_margin = 2.0;
    bool richardson = true;
    // Highest energy the harmonic box must hold; defaults to 1.5x the upper
    // bound on the requested levels.
    std::optional<double> e_top;
    double eigen_tol = 1e-11;
};

void validate(const OracleConfig& cfg);
int default_points(ModelKind kind);

struct TridiagonalHamiltonian {
    std::vector<double> diag;
    std::vector<double> offdiag;  // size diag.size() - 1
    double x_min = 0.0;           // position of diag[0]
    double h = 0.0;
    ModelKind model_tag = ModelKind::M1;
    std::optional<std::size_t> delta_node;  // index carrying the delta spike
};

// Interval [x_left, x_right] of the problem box (walls or truncation).
struct Domain {
    double x_left = 0.0;
    double x_right = 0.0;
};

Domain oracle_domain(const ModelParams& model, const UnitsConfig& units, const OracleConfig& cfg,
                     double e_top);

// Potential at x without the delta part (M1, M3 carry v0 * delta(x) separately).
double potential(const ModelParams& model, const UnitsConfig& units, double x);

TridiagonalHamiltonian build_hamiltonian(const ModelParams& model, const UnitsConfig& units,
                                         const OracleConfig& cfg);

// Number of eigenvalues strictly below e.
int sturm_count(const TridiagonalHamiltonian& t, double e);

std::vector<double> lowest_eigenvalues(const TridiagonalHamiltonian& t, int n, double tol);

std::vector<double> oracle_levels(const ModelParams& model, const UnitsConfig& units, int n,
                                  const OracleConfig& cfg = {});

// Sturm count at e on the default single grid, with the box sized for e.
int oracle_count_below(const ModelParams& model, const UnitsConfig& units, double e,
                       const OracleConfig& cfg = {});

// Launches psi_L from the left wall and psi_R from the right wall at energy e
// (RK4 on segments split at every potential singularity, slope jump applied
// at deltas) and returns max_x |W(x)| / max(|psi_L psi_R'|, |psi_R psi_L'|, floor)
// with floor = 1e-3 of the largest such product. Near 0 at an eigenvalue.
double wronskian_constancy(const ModelParams& model, const UnitsConfig& units, double e,
                           const OracleConfig& cfg = {});

}  // namespace dwell
