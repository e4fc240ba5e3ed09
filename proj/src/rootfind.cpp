#include "dwell/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct Sample {
    double x;
    double f;
};

// Evaluates f on a uniform grid, nudging any node that lands exactly on a
// root so every root shows up as a strict sign change.
std::vector<Sample> sample_grid(const ScalarFn& f, double lo, double hi, long cells) {
    std::vector<Sample> s(static_cast<std::size_t>(cells) + 1);
    const double width = (hi - lo) / static_cast<double>(cells);
    for (long i = 0; i <= cells; ++i) {
        double x = i == cells ? hi : lo + width * static_cast<double>(i);
        double fx = f(x);
        for (int nudge = 1; fx == 0.0 && nudge <= 4; ++nudge) {
            x += (i == cells ? -1.0 : 1.0) * 1e-7 * width;
            fx = f(x);
        }
        s[static_cast<std::size_t>(i)] = {x, fx};
    }
    return s;
}

// Golden-section search for an interior point where f flips to the opposite
// sign of its endpoints. Returns the probe when found.
std::optional<Sample> probe_hidden_pair(const ScalarFn& f, Sample left, Sample right, int depth) {
    const int s = sign_of(left.f);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = left.x;
    double b = right.x;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    // Golden steps shrink by 0.618; ~1.44 of them per requested halving.
    const int iterations = static_cast<int>(std::ceil(1.44 * depth)) + 2;
    for (int it = 0; it < iterations; ++it) {
        if (sign_of(f1) != s) return Sample{x1, f1};
        if (sign_of(f2) != s) return Sample{x2, f2};
        if (s * f1 < s * f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    if (sign_of(f1) != s) return Sample{x1, f1};
    if (sign_of(f2) != s) return Sample{x2, f2};
    return std::nullopt;
}

std::vector<Bracket> scan_once(const ScalarFn& f, double lo, double hi, long cells, int depth) {
    const std::vector<Sample> s = sample_grid(f, lo, hi, cells);
    const std::size_t n = s.size();

    // A node where |f| has a local minimum with no sign change on either side
    // marks [x_{i-1}, x_{i+1}] as possibly hiding two roots (an avoided-crossing
    // doublet narrower than a cell). This covers every cell the "|f| dips below
    // a fraction of its median" rule would flag.
    std::vector<Sample> probes;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const int sl = sign_of(s[i - 1].f);
        if (sl != sign_of(s[i].f) || sl != sign_of(s[i + 1].f)) continue;
        const double m = std::fabs(s[i].f);
        if (m > std::fabs(s[i - 1].f) || m > std::fabs(s[i + 1].f)) continue;
        if (auto hit = probe_hidden_pair(f, s[i - 1], s[i + 1], depth)) probes.push_back(*hit);
    }

    std::vector<Sample> merged = s;
    merged.insert(merged.end(), probes.begin(), probes.end());
    std::sort(merged.begin(), merged.end(), [](const Sample& l, const Sample& r) { return l.x < r.x; });

    std::vector<Bracket> out;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        if (sign_of(merged[i].f) * sign_of(merged[i + 1].f) < 0) {
            out.push_back({merged[i].x, merged[i + 1].x, merged[i].f, merged[i + 1].f});
        }
    }
    return out;
}

}  // namespace

void validate(const RootfindConfig& cfg) {
    if (!(cfg.e_min < cfg.e_max)) throw InvalidParams("rootfind: requires e_min < e_max");
    if (cfg.coarse_steps < 64) throw InvalidParams("rootfind: requires coarse_steps >= 64");
    if (!(cfg.tol_abs > 0.0)) throw InvalidParams("rootfind: requires tol_abs > 0");
    if (cfg.tol_rel < 0.0) throw InvalidParams("rootfind: requires tol_rel >= 0");
    if (cfg.max_subdivision_depth < 0) throw InvalidParams("rootfind: requires max_subdivision_depth >= 0");
}

std::vector<Bracket> scan_brackets(const ScalarFn& f, const RootfindConfig& cfg,
                                   std::optional<int> expected_count) {
    validate(cfg);
    std::vector<Bracket> found =
        scan_once(f, cfg.e_min, cfg.e_max, cfg.coarse_steps, cfg.max_subdivision_depth);
    if (!expected_count || static_cast<int>(found.size()) >= *expected_count) return found;

    for (int level = 1; level <= cfg.max_subdivision_depth; ++level) {
        const long cells = static_cast<long>(cfg.coarse_steps) << level;
        found = scan_once(f, cfg.e_min, cfg.e_max, cells, cfg.max_subdivision_depth - level);
        if (static_cast<int>(found.size()) >= *expected_count) return found;
    }
    throw CountMismatch("scan_brackets: found " + std::to_string(found.size()) +
                            " brackets, expected " + std::to_string(*expected_count),
                        static_cast<int>(found.size()), *expected_count);
}

double refine_root(const ScalarFn& f, const Bracket& bracket, const RootfindConfig& cfg) {
    double a = bracket.lo;
    double b = bracket.hi;
    double fa = bracket.f_lo;
    double fb = bracket.f_hi;
    if (!(a < b) || sign_of(fa) * sign_of(fb) >= 0) {
        throw InvalidParams("refine_root: bracket must satisfy lo < hi and f_lo*f_hi < 0");
    }
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int iter = 0; iter < 200; ++iter) {
        if (sign_of(fb) == sign_of(fc)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = std::max(cfg.tol_abs, cfg.tol_rel * std::fabs(b));
        const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol1 || fb == 0.0) return b;

        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            // Inverse quadratic (or secant) step.
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : (m > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

std::vector<double> solve_levels(const ModelParams& model, const UnitsConfig& units, int n_levels,
                                 const RootfindConfig& cfg) {
    if (n_levels < 1) throw InvalidParams("solve_levels: requires n_levels >= 1");
    validate(model, units);
    const ScalarFn f = [&](double e) { return characteristic(e, model, units).value; };

    RootfindConfig window = cfg;
    window.e_max = std::max(1.05 * level_upper_bound(model, units, n_levels) + 1e-6, 2.0 * cfg.e_min);
    while (true) {
        if (window.e_max > kEnergyCap) {
            throw SolverError("solve_levels: energy window exceeded the 1e4 eV cap");
        }
        const std::vector<Bracket> brackets = scan_brackets(f, window);
        if (static_cast<int>(brackets.size()) >= n_levels) {
            std::vector<double> levels;
            levels.reserve(static_cast<std::size_t>(n_levels));
            for (int i = 0; i < n_levels; ++i) {
                levels.push_back(refine_root(f, brackets[static_cast<std::size_t>(i)], window));
            }
            for (std::size_t i = 1; i < levels.size(); ++i) {
                if (!(levels[i] > levels[i - 1])) {
                    throw SolverError("solve_levels: refined levels are not strictly ascending");
                }
            }
            return levels;
        }
        window.e_max *= 2.0;
    }
}

}  // namespace dwell
