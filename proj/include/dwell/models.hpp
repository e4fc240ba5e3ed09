#pragma once

// Characteristic functions F(E) for the four double-well models. Every real
// zero of F is a bound-state energy and every bound-state energy is a zero:
// the forms are free of gamma poles and of the spurious zero that the raw
// matching determinant has at E = V0.
//
// Units: energies in eV, lengths in Angstrom, u = 2 mu / hbar^2 in 1/(eV A^2).

#include <optional>
#include <string_view>
#include <variant>

namespace dwell {

struct UnitsConfig {
    double u = 1.0;
};

// Delta barrier v0*delta(x) between hard walls at x = -a and x = b.
struct M1Params {
    double v0 = 0.0;  // eV A
    double a = 1.0;
    double b = 1.0;
};

// Hard walls at -a and c with a rectangular barrier of height v0 on [-b, b].
struct M2Params {
    double v0 = 0.0;  // eV
    double a = 2.0;
    double b = 1.0;
    double c = 2.0;
};

// Delta barrier at the origin of a harmonic well with hbar*omega = hw1 (x < 0) and hw2 (x > 0).
struct M3Params {
    double v0 = 0.0;  // eV A
    double hw1 = 1.0;
    double hw2 = 1.0;
};

// Rectangular barrier of height v0 on (-a, a) between two half harmonic wells
// centred at -a (hw1) and +a (hw2).
struct M4Params {
    double v0 = 0.0;  // eV
    double hw1 = 1.0;
    double hw2 = 1.0;
    double a = 0.0;
};

using ModelParams = std::variant<M1Params, M2Params, M3Params, M4Params>;

enum class ModelKind { M1, M2, M3, M4 };

ModelKind kind_of(const ModelParams& model);
std::string_view model_name(ModelKind kind);  // "m1".."m4"

// Throws InvalidParams naming the first violated invariant.
void validate(const ModelParams& model, const UnitsConfig& units);

struct DerivedQuantities {
    std::optional<double> k;
    std::optional<double> p_or_q;  // |u (V0 - E)|^(1/2)
    bool above_barrier = false;    // true when p_or_q is the oscillatory branch
    std::optional<double> nu1, nu2;
    std::optional<double> alpha1, alpha2;
};

struct CharacteristicEvaluation {
    double energy = 0.0;
    double value = 0.0;
    DerivedQuantities derived;
};

// Positive E-dependent normalizer applied to the harmonic-well models.
//   Scaled:    divide D_nu(0), D'_nu(0) by 2^(nu/2) Gamma(1/2 + nu/2) per well
//              (closed form, bounded growth, used everywhere by default);
//   Reference: plain D_nu values from reciprocal gammas times 2^(-(nu1+nu2)/2)/pi.
//              Overflows for nu of a few hundred; kept as a second route.
enum class Normalization { Scaled, Reference };

CharacteristicEvaluation char_m1(double energy, const M1Params& p, const UnitsConfig& units);
CharacteristicEvaluation char_m2(double energy, const M2Params& p, const UnitsConfig& units);
CharacteristicEvaluation char_m3(double energy, const M3Params& p, const UnitsConfig& units,
                                 Normalization norm = Normalization::Scaled);
CharacteristicEvaluation char_m4(double energy, const M4Params& p, const UnitsConfig& units,
                                 Normalization norm = Normalization::Scaled);

CharacteristicEvaluation characteristic(double energy, const ModelParams& model,
                                        const UnitsConfig& units);

// Half-width of the window around E = V0 inside which barrier factors use
// their Taylor series.
double barrier_switch_width(double v0);

// An energy below which at least n levels are guaranteed to lie: the n-th
// level of the infinitely high barrier limit.
double level_upper_bound(const ModelParams& model, const UnitsConfig& units, int n);

}  // namespace dwell
