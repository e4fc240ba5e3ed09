#include "dwell/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

struct Grid {
    double x_left = 0.0;  // wall; interior nodes are x_left + i h, i = 1..intervals-1
    double h = 0.0;
    long intervals = 0;
};

struct Singularities {
    std::vector<double> steps;  // jump discontinuities of V
    std::optional<double> delta_strength;
};

Singularities singularities(const ModelParams& model) {
    return std::visit(
        [](const auto& p) -> Singularities {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, M1Params>) return {{}, p.v0};
            else if constexpr (std::is_same_v<T, M2Params>) return {{-p.b, p.b}, std::nullopt};
            else if constexpr (std::is_same_v<T, M3Params>) return {{}, p.v0};
            else {
                if (p.a > 0.0) return {{-p.a, p.a}, std::nullopt};
                return {{}, std::nullopt};
            }
        },
        model);
}

double harmonic(double u, double hw, double x) { return 0.25 * u * hw * hw * x * x; }

// Half-width of the harmonic region that keeps V >= margin^2 * e_top at the wall.
double harmonic_extent(double u, double hw, double e_top, double margin) {
    const double turning = 2.0 * std::sqrt(e_top / u) / hw;
    return std::max(margin, 2.0) * turning;
}

// Offset of x from the nearest multiple of h, in cells.
double node_offset(double x, double h) {
    const double pos = x / h;
    return std::fabs(pos - std::nearbyint(pos));
}

// Interval count in [target, target + target/8] that puts the given interior
// points closest to grid nodes (walls are nodes by construction).
long aligned_intervals(long target, double len, const std::vector<double>& from_left) {
    long best = target;
    double best_off = 1.0;
    for (long m = target; m <= target + target / 8; ++m) {
        const double h = len / static_cast<double>(m);
        double off = 0.0;
        for (double x : from_left) off = std::max(off, node_offset(x, h));
        if (off < best_off - 1e-12) {
            best_off = off;
            best = m;
        }
        if (off < 1e-9) break;
    }
    return best;
}

// Uniform grid over the box. Deltas and potential steps are placed on grid
// nodes: exactly for the harmonic models, as closely as the interval count
// allows between hard walls. Misaligned steps leave an O(h^2) error whose
// coefficient oscillates with h, which spoils Richardson extrapolation.
Grid make_grid(const ModelParams& model, const UnitsConfig& units, const OracleConfig& cfg,
               double e_top) {
    const long target = static_cast<long>(cfg.n_points > 0 ? cfg.n_points
                                                           : default_points(kind_of(model))) + 1;
    const Domain dom = oracle_domain(model, units, cfg, e_top);
    const double len = dom.x_right - dom.x_left;

    if (const auto* m1 = std::get_if<M1Params>(&model)) {
        const long m = aligned_intervals(target, len, {m1->a});
        return {dom.x_left, len / static_cast<double>(m), m};
    }
    if (const auto* m2 = std::get_if<M2Params>(&model)) {
        const long m = aligned_intervals(target, len, {m2->a - m2->b, m2->a + m2->b});
        return {dom.x_left, len / static_cast<double>(m), m};
    }
    // Harmonic boxes: x = 0 (and x = +-a for m4) on nodes, ends extended to
    // whole multiples of h.
    double h = len / static_cast<double>(target);
    if (const auto* m4 = std::get_if<M4Params>(&model); m4 && m4->a > 0.0) {
        h = m4->a / std::ceil(m4->a / h);
    }
    const long left = static_cast<long>(std::ceil(-dom.x_left / h - 1e-9));
    const long right = static_cast<long>(std::ceil(dom.x_right / h - 1e-9));
    return {-static_cast<double>(left) * h, h, left + right};
}

// Cell average of V over [x - h/2, x + h/2], splitting at jump discontinuities
// (3-point Gauss-Legendre per smooth piece, exact for the quadratic wells).
double cell_potential(const ModelParams& model, const UnitsConfig& units,
                      const std::vector<double>& steps, double x, double h) {
    const double lo = x - 0.5 * h;
    const double hi = x + 0.5 * h;
    std::vector<double> cuts{lo};
    for (double s : steps) {
        if (s > lo && s < hi) cuts.push_back(s);
    }
    if (cuts.size() == 1) return potential(model, units, x);
    cuts.push_back(hi);
    static constexpr std::array<double, 3> nodes = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static constexpr std::array<double, 3> weights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        const double half = 0.5 * (cuts[i + 1] - cuts[i]);
        for (std::size_t g = 0; g < nodes.size(); ++g) {
            total += weights[g] * half * potential(model, units, mid + half * nodes[g]);
        }
    }
    return total / h;
}

TridiagonalHamiltonian build_on_grid(const ModelParams& model, const UnitsConfig& units,
                                     const Grid& grid) {
    const Singularities sing = singularities(model);
    const std::size_t n = static_cast<std::size_t>(grid.intervals - 1);
    const double kinetic = 1.0 / (units.u * grid.h * grid.h);

    TridiagonalHamiltonian t;
    t.model_tag = kind_of(model);
    t.h = grid.h;
    t.x_min = grid.x_left + grid.h;
    t.diag.resize(n);
    t.offdiag.assign(n > 0 ? n - 1 : 0, -kinetic);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = t.x_min + grid.h * static_cast<double>(i);
        t.diag[i] = 2.0 * kinetic + cell_potential(model, units, sing.steps, x, grid.h);
    }
    if (sing.delta_strength) {
        const long node = std::lround(-grid.x_left / grid.h);
        if (node < 1 || node > grid.intervals - 1) {
            throw InvalidParams("build_hamiltonian: delta node falls on a boundary");
        }
        const std::size_t idx = static_cast<std::size_t>(node - 1);
        t.diag[idx] += *sing.delta_strength / grid.h;
        t.delta_node = idx;
    }
    return t;
}

double resolve_e_top(const ModelParams& model, const UnitsConfig& units, const OracleConfig& cfg,
                     int n) {
    if (cfg.e_top) return *cfg.e_top;
    return 1.5 * level_upper_bound(model, units, std::max(n, 1));
}

}  // namespace

int default_points(ModelKind kind) {
    return (kind == ModelKind::M1 || kind == ModelKind::M2) ? 4000 : 6000;
}

void validate(const OracleConfig& cfg) {
    if (cfg.n_points != 0 && cfg.n_points < 500) {
        throw InvalidParams("oracle: requires n_points >= 500");
    }
    if (!(cfg.turning_point_margin >= 1.5)) {
        throw InvalidParams("oracle: requires turning_point_margin >= 1.5");
    }
    if (!(cfg.eigen_tol > 0.0)) throw InvalidParams("oracle: requires eigen_tol > 0");
    if (cfg.e_top && !(*cfg.e_top > 0.0)) throw InvalidParams("oracle: requires e_top > 0");
}

double potential(const ModelParams& model, const UnitsConfig& units, double x) {
    const double u = units.u;
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, M1Params>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, M2Params>) {
                return std::fabs(x) < p.b ? p.v0 : 0.0;
            } else if constexpr (std::is_same_v<T, M3Params>) {
                return x < 0.0 ? harmonic(u, p.hw1, x) : harmonic(u, p.hw2, x);
            } else {
                if (x <= -p.a) return harmonic(u, p.hw1, x + p.a);
                if (x >= p.a) return harmonic(u, p.hw2, x - p.a);
                return p.v0;
            }
        },
        model);
}

Domain oracle_domain(const ModelParams& model, const UnitsConfig& units, const OracleConfig& cfg,
                     double e_top) {
    const double m = cfg.turning_point_margin;
    return std::visit(
        [&](const auto& p) -> Domain {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, M1Params>) {
                return {-p.a, p.b};
            } else if constexpr (std::is_same_v<T, M2Params>) {
                return {-p.a, p.c};
            } else if constexpr (std::is_same_v<T, M3Params>) {
                return {-harmonic_extent(units.u, p.hw1, e_top, m),
                        harmonic_extent(units.u, p.hw2, e_top, m)};
            } else {
                return {-p.a - harmonic_extent(units.u, p.hw1, e_top, m),
                        p.a + harmonic_extent(units.u, p.hw2, e_top, m)};
            }
        },
        model);
}

TridiagonalHamiltonian build_hamiltonian(const ModelParams& model, const UnitsConfig& units,
                                         const OracleConfig& cfg) {
    validate(model, units);
    validate(cfg);
    const double e_top = resolve_e_top(model, units, cfg, 1);
    return build_on_grid(model, units, make_grid(model, units, cfg, e_top));
}

int sturm_count(const TridiagonalHamiltonian& t, double e) {
    const std::size_t n = t.diag.size();
    if (n == 0) return 0;
    double emax = 0.0;
    for (double v : t.offdiag) emax = std::max(emax, v * v);
    const double pivmin = std::max(std::numeric_limits<double>::min(),
                                   emax * std::numeric_limits<double>::min() * 4.0);
    int count = 0;
    double q = t.diag[0] - e;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        q = t.diag[i] - e - t.offdiag[i - 1] * t.offdiag[i - 1] / q;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalHamiltonian& t, int n, double tol) {
    const std::size_t dim = t.diag.size();
    if (n < 0 || static_cast<std::size_t>(n) > dim) {
        throw InvalidParams("lowest_eigenvalues: n exceeds matrix dimension");
    }
    if (n == 0) return {};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dim; ++i) {
        const double r = (i > 0 ? std::fabs(t.offdiag[i - 1]) : 0.0) +
                         (i + 1 < dim ? std::fabs(t.offdiag[i]) : 0.0);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    lo -= tol;
    hi += tol;
    // Shrink the upper end to just above the n-th eigenvalue.
    double upper = lo + std::max(1.0, tol);
    while (upper < hi && sturm_count(t, upper) < n) upper = lo + 2.0 * (upper - lo);
    upper = std::min(upper, hi);

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    double floor = lo;
    for (int k = 0; k < n; ++k) {
        double a = floor;
        double b = upper;
        while (b - a > tol) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (sturm_count(t, mid) >= k + 1) b = mid;
            else a = mid;
        }
        const double value = 0.5 * (a + b);
        out.push_back(value);
        floor = a;
    }
    return out;
}

std::vector<double> oracle_levels(const ModelParams& model, const UnitsConfig& units, int n,
                                  const OracleConfig& cfg) {
    validate(model, units);
    validate(cfg);
    const double e_top = resolve_e_top(model, units, cfg, n);
    const Grid grid = make_grid(model, units, cfg, e_top);
    std::vector<double> coarse = lowest_eigenvalues(build_on_grid(model, units, grid), n, cfg.eigen_tol);
    if (!cfg.richardson) return coarse;
    const Grid fine{grid.x_left, 0.5 * grid.h, 2 * grid.intervals};
    const std::vector<double> refined =
        lowest_eigenvalues(build_on_grid(model, units, fine), n, cfg.eigen_tol);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        coarse[i] = (4.0 * refined[i] - coarse[i]) / 3.0;
    }
    return coarse;
}

int oracle_count_below(const ModelParams& model, const UnitsConfig& units, double e,
                       const OracleConfig& cfg) {
    validate(model, units);
    validate(cfg);
    const double e_top = cfg.e_top ? *cfg.e_top : 1.5 * e;
    return sturm_count(build_on_grid(model, units, make_grid(model, units, cfg, e_top)), e);
}

namespace {

struct PhasePoint {
    double psi;
    double dpsi;
};

struct Segment {
    double lo;
    double hi;
};

}  // namespace

double wronskian_constancy(const ModelParams& model, const UnitsConfig& units, double e,
                           const OracleConfig& cfg) {
    validate(model, units);
    validate(cfg);
    // Harmonic boxes sized from 1.5 E still leave ~e^-9 of the tail at the
    // wall, which shows up directly in W; 3 E pushes it below 1e-8.
    const double e_top = cfg.e_top ? *cfg.e_top : std::max(3.0 * e, 1e-6);
    const Domain dom = oracle_domain(model, units, cfg, e_top);
    const Singularities sing = singularities(model);
    const double u = units.u;
    const int points = cfg.n_points > 0 ? cfg.n_points : default_points(kind_of(model));
    const double h_target = (dom.x_right - dom.x_left) / static_cast<double>(points + 1);

    std::vector<double> cuts{dom.x_left};
    for (double s : sing.steps) cuts.push_back(s);
    if (sing.delta_strength) cuts.push_back(0.0);
    cuts.push_back(dom.x_right);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Node list: segment interiors plus both one-sided copies of each cut.
    struct Node {
        double x;
        std::size_t segment;
    };
    std::vector<Segment> segments;
    std::vector<Node> nodes;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const Segment seg{cuts[s], cuts[s + 1]};
        const long steps = std::max(1L, static_cast<long>(std::ceil((seg.hi - seg.lo) / h_target)));
        const double h = (seg.hi - seg.lo) / static_cast<double>(steps);
        for (long i = 0; i <= steps; ++i) {
            nodes.push_back({i == steps ? seg.hi : seg.lo + h * static_cast<double>(i), s});
        }
        segments.push_back(seg);
    }

    // V inside a segment, taking one-sided limits at its ends.
    auto seg_potential = [&](double x, const Segment& seg) {
        const double mid = 0.5 * (seg.lo + seg.hi);
        if (x <= seg.lo || x >= seg.hi) x += (mid - x) * 1e-12;
        return potential(model, units, x);
    };
    auto rk4 = [&](PhasePoint y, double x0, double x1, const Segment& seg) {
        const double h = x1 - x0;
        auto deriv = [&](double x, PhasePoint s) {
            return PhasePoint{s.dpsi, u * (seg_potential(x, seg) - e) * s.psi};
        };
        const PhasePoint k1 = deriv(x0, y);
        const PhasePoint k2 = deriv(x0 + 0.5 * h, {y.psi + 0.5 * h * k1.psi, y.dpsi + 0.5 * h * k1.dpsi});
        const PhasePoint k3 = deriv(x0 + 0.5 * h, {y.psi + 0.5 * h * k2.psi, y.dpsi + 0.5 * h * k2.dpsi});
        const PhasePoint k4 = deriv(x1, {y.psi + h * k3.psi, y.dpsi + h * k3.dpsi});
        return PhasePoint{y.psi + h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi),
                          y.dpsi + h / 6.0 * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi)};
    };
    const double jump = sing.delta_strength ? u * *sing.delta_strength : 0.0;
    auto rescale = [](std::vector<PhasePoint>& v, std::size_t upto) {
        for (std::size_t i = 0; i <= upto; ++i) {
            v[i].psi *= 1e-150;
            v[i].dpsi *= 1e-150;
        }
    };

    const std::size_t n = nodes.size();
    std::vector<PhasePoint> left(n);
    std::vector<PhasePoint> right(n);

    left[0] = {0.0, 1.0};
    for (std::size_t i = 1; i < n; ++i) {
        if (nodes[i].segment != nodes[i - 1].segment) {
            // Same x, new segment: continuity plus the delta slope jump at x = 0.
            left[i] = left[i - 1];
            if (sing.delta_strength && nodes[i].x == 0.0) left[i].dpsi += jump * left[i].psi;
        } else {
            left[i] = rk4(left[i - 1], nodes[i - 1].x, nodes[i].x, segments[nodes[i].segment]);
        }
        if (std::fabs(left[i].psi) + std::fabs(left[i].dpsi) > 1e150) rescale(left, i);
    }
    right[n - 1] = {0.0, -1.0};
    for (std::size_t i = n - 1; i-- > 0;) {
        if (nodes[i].segment != nodes[i + 1].segment) {
            right[i] = right[i + 1];
            if (sing.delta_strength && nodes[i].x == 0.0) right[i].dpsi -= jump * right[i].psi;
        } else {
            right[i] = rk4(right[i + 1], nodes[i + 1].x, nodes[i].x, segments[nodes[i].segment]);
        }
        if (std::fabs(right[i].psi) + std::fabs(right[i].dpsi) > 1e150) {
            for (std::size_t j = i; j < n; ++j) {
                right[j].psi *= 1e-150;
                right[j].dpsi *= 1e-150;
            }
        }
    }

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        scale = std::max({scale, std::fabs(left[i].psi * right[i].dpsi),
                          std::fabs(right[i].psi * left[i].dpsi)});
    }
    if (scale == 0.0) return 0.0;
    const double floor = 1e-3 * scale;
    double worst = 0.0;
    // Interior only: both wall nodes are excluded.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double a = left[i].psi * right[i].dpsi;
        const double b = right[i].psi * left[i].dpsi;
        worst = std::max(worst, std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), floor}));
    }
    return worst;
}

}  // namespace dwell
