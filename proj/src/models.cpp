#include "dwell/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dwell/errors.hpp"
#include "dwell/specfun.hpp"

namespace dwell {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParams(what);
}

bool finite_all(std::initializer_list<double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

void require_positive_energy(double energy, const char* who) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw DomainError(std::string(who) + ": energy must be finite and > 0");
    }
}

// Transfer factors across a flat barrier of length `len` where
// psi'' = kappa2 * psi: cosh(sqrt(kappa2) len) and sinh(sqrt(kappa2) len)/sqrt(kappa2),
// continued to cos/sin for kappa2 < 0.
struct BarrierFactors {
    double c = 1.0;
    double s_over = 0.0;
};

BarrierFactors barrier_factors(double kappa2, double len, bool use_series) {
    if (use_series) {
        const double x = kappa2 * len * len;
        return {1.0 + x / 2.0 * (1.0 + x / 12.0 * (1.0 + x / 30.0)),
                len * (1.0 + x / 6.0 * (1.0 + x / 20.0 * (1.0 + x / 42.0)))};
    }
    if (kappa2 > 0.0) {
        const double p = std::sqrt(kappa2);
        return {std::cosh(p * len), std::sinh(p * len) / p};
    }
    const double q = std::sqrt(-kappa2);
    return {std::cos(q * len), std::sin(q * len) / q};
}

struct WellBoundary {
    double d0;
    double d0_prime;
    double nu;
    double alpha;
};

WellBoundary well_boundary(double energy, double hw, const UnitsConfig& units, Normalization norm) {
    const double nu = energy / hw - 0.5;
    const specfun::PcfBoundaryValues pcf =
        norm == Normalization::Scaled ? specfun::pcf_at_zero_scaled(nu) : specfun::pcf_at_zero(nu);
    return {pcf.d0, pcf.d0_prime, nu, std::sqrt(units.u * hw)};
}

double pcf_pair_factor(const WellBoundary& w1, const WellBoundary& w2, Normalization norm) {
    // Scaled values carry 1/pi from the two sqrt(pi) denominators.
    if (norm == Normalization::Scaled) return std::numbers::pi;
    return std::exp2(-0.5 * (w1.nu + w2.nu)) / std::numbers::pi;
}

}  // namespace

ModelKind kind_of(const ModelParams& model) { return static_cast<ModelKind>(model.index()); }

std::string_view model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::M1: return "m1";
        case ModelKind::M2: return "m2";
        case ModelKind::M3: return "m3";
        case ModelKind::M4: return "m4";
    }
    return "?";
}

void validate(const ModelParams& model, const UnitsConfig& units) {
    require(std::isfinite(units.u) && units.u > 0.0, "u must be > 0");
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, M1Params>) {
                require(finite_all({p.v0, p.a, p.b}), "m1: parameters must be finite");
                require(p.a > 0.0, "m1: requires a > 0");
                require(p.b > 0.0, "m1: requires b > 0");
                require(p.v0 >= 0.0, "m1: requires v0 >= 0");
            } else if constexpr (std::is_same_v<T, M2Params>) {
                require(finite_all({p.v0, p.a, p.b, p.c}), "m2: parameters must be finite");
                require(p.b > 0.0, "m2: requires b > 0");
                require(p.a > p.b, "m2: requires a > b");
                require(p.c > p.b, "m2: requires c > b");
                require(p.v0 >= 0.0, "m2: requires v0 >= 0");
            } else if constexpr (std::is_same_v<T, M3Params>) {
                require(finite_all({p.v0, p.hw1, p.hw2}), "m3: parameters must be finite");
                require(p.hw1 > 0.0, "m3: requires hw1 > 0");
                require(p.hw2 > 0.0, "m3: requires hw2 > 0");
                require(p.v0 >= 0.0, "m3: requires v0 >= 0");
            } else {
                require(finite_all({p.v0, p.hw1, p.hw2, p.a}), "m4: parameters must be finite");
                require(p.hw1 > 0.0, "m4: requires hw1 > 0");
                require(p.hw2 > 0.0, "m4: requires hw2 > 0");
                require(p.a >= 0.0, "m4: requires a >= 0");
                require(p.v0 >= 0.0, "m4: requires v0 >= 0");
            }
        },
        model);
}

double barrier_switch_width(double v0) { return 1e-6 * std::max(1.0, v0); }

CharacteristicEvaluation char_m1(double energy, const M1Params& p, const UnitsConfig& units) {
    require_positive_energy(energy, "char_m1");
    const double k = std::sqrt(units.u * energy);
    CharacteristicEvaluation out;
    out.energy = energy;
    // k sin k(a+b) + u v0 sin(ka) sin(kb): continuity plus the delta slope jump.
    out.value = k * std::sin(k * (p.a + p.b)) + units.u * p.v0 * std::sin(k * p.a) * std::sin(k * p.b);
    out.derived.k = k;
    return out;
}

CharacteristicEvaluation char_m2(double energy, const M2Params& p, const UnitsConfig& units) {
    require_positive_energy(energy, "char_m2");
    const double u = units.u;
    const double k = std::sqrt(u * energy);
    const double d1 = p.a - p.b;
    const double d2 = p.c - p.b;
    const double d = d1 + d2;
    const double kappa2 = u * (p.v0 - energy);
    const bool series = std::fabs(energy - p.v0) < barrier_switch_width(p.v0);
    const BarrierFactors bf = barrier_factors(kappa2, 2.0 * p.b, series);

    // k^2 cos(kd) + u V0 s1 s2 = p^2 s1 s2 + k^2 c1 c2, symmetric in d1 <-> d2.
    const double coupling =
        k * k * std::cos(k * d) + u * p.v0 * (std::sin(k * d1) * std::sin(k * d2));

    CharacteristicEvaluation out;
    out.energy = energy;
    out.value = k * std::sin(k * d) * bf.c + coupling * bf.s_over;
    out.derived.k = k;
    out.derived.p_or_q = std::sqrt(std::fabs(kappa2));
    out.derived.above_barrier = kappa2 < 0.0;
    return out;
}

CharacteristicEvaluation char_m3(double energy, const M3Params& p, const UnitsConfig& units,
                                 Normalization norm) {
    require_positive_energy(energy, "char_m3");
    const WellBoundary w1 = well_boundary(energy, p.hw1, units, norm);
    const WellBoundary w2 = well_boundary(energy, p.hw2, units, norm);

    // psi = D_nu2(0) D_nu1(-alpha1 x) on the left, D_nu1(0) D_nu2(alpha2 x) on
    // the right; continuity holds identically, the slope jump gives F = 0.
    const double raw = w2.alpha * w2.d0_prime * w1.d0 + w1.alpha * w1.d0_prime * w2.d0 -
                       units.u * p.v0 * w1.d0 * w2.d0;

    CharacteristicEvaluation out;
    out.energy = energy;
    out.value = raw * pcf_pair_factor(w1, w2, norm);
    out.derived.k = std::sqrt(units.u * energy);
    out.derived.nu1 = w1.nu;
    out.derived.nu2 = w2.nu;
    out.derived.alpha1 = w1.alpha;
    out.derived.alpha2 = w2.alpha;
    return out;
}

CharacteristicEvaluation char_m4(double energy, const M4Params& p, const UnitsConfig& units,
                                 Normalization norm) {
    require_positive_energy(energy, "char_m4");
    const WellBoundary w1 = well_boundary(energy, p.hw1, units, norm);
    const WellBoundary w2 = well_boundary(energy, p.hw2, units, norm);
    const double kappa2 = units.u * (p.v0 - energy);
    const bool series = std::fabs(energy - p.v0) < barrier_switch_width(p.v0);
    const BarrierFactors bf = barrier_factors(kappa2, 2.0 * p.a, series);

    // Start at x = -a with (psi, psi') = (D1, -alpha1 D1'), carry across the
    // barrier, and require psi'/psi = alpha2 D2'/D2 at x = +a.
    const double slopes = w1.alpha * w1.d0_prime * w2.d0 + w2.alpha * w2.d0_prime * w1.d0;
    const double cross = kappa2 * w1.d0 * w2.d0 + w1.alpha * w2.alpha * w1.d0_prime * w2.d0_prime;
    const double raw = slopes * bf.c - cross * bf.s_over;

    CharacteristicEvaluation out;
    out.energy = energy;
    out.value = raw * pcf_pair_factor(w1, w2, norm);
    out.derived.k = std::sqrt(units.u * energy);
    out.derived.p_or_q = std::sqrt(std::fabs(kappa2));
    out.derived.above_barrier = kappa2 < 0.0;
    out.derived.nu1 = w1.nu;
    out.derived.nu2 = w2.nu;
    out.derived.alpha1 = w1.alpha;
    out.derived.alpha2 = w2.alpha;
    return out;
}

CharacteristicEvaluation characteristic(double energy, const ModelParams& model,
                                        const UnitsConfig& units) {
    return std::visit(
        [&](const auto& p) -> CharacteristicEvaluation {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, M1Params>) return char_m1(energy, p, units);
            else if constexpr (std::is_same_v<T, M2Params>) return char_m2(energy, p, units);
            else if constexpr (std::is_same_v<T, M3Params>) return char_m3(energy, p, units);
            else return char_m4(energy, p, units);
        },
        model);
}

double level_upper_bound(const ModelParams& model, const UnitsConfig& units, int n) {
    const double pi = std::numbers::pi;
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, M1Params>) {
                const double w = std::max(p.a, p.b);
                return std::pow(n * pi / w, 2) / units.u;
            } else if constexpr (std::is_same_v<T, M2Params>) {
                const double w = std::max(p.a - p.b, p.c - p.b);
                return std::pow(n * pi / w, 2) / units.u;
            } else {
                // Odd levels of the half oscillators: (2n + 1/2) hbar omega.
                return (2.0 * n + 0.5) * std::min(p.hw1, p.hw2);
            }
        },
        model);
}

}  // namespace dwell
