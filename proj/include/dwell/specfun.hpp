#pragma once

// Real-line special functions for the harmonic-well models: gamma with
// tracked sign, the (entire) reciprocal gamma, and the value and slope of the
// parabolic cylinder function D_nu at the origin.

namespace dwell::specfun {

struct SignedLogGamma {
    double log_abs = 0.0;  // ln|Gamma(x)|
    int sign = 1;          // sign of Gamma(x)

    double value() const;
};

struct PcfBoundaryValues {
    double d0 = 0.0;        // D_nu(0)
    double d0_prime = 0.0;  // D'_nu(0)
    double nu = 0.0;
};

// Distance below which an argument is treated as sitting on a gamma pole.
inline constexpr double kPoleTolerance = 1e-12;

// sin(pi x) and cos(pi x) with exact argument reduction.
double sin_pi(double x);
double cos_pi(double x);

// Throws DomainError for non-finite x or x within kPoleTolerance of 0, -1, -2, ...
SignedLogGamma log_gamma_signed(double x);

// 1/Gamma(x); exactly zero on (and within kPoleTolerance of) the poles of Gamma.
double recip_gamma(double x);

// D_nu(0) = 2^(nu/2) sqrt(pi) / Gamma(1/2 - nu/2)
// D'_nu(0) = -2^((nu+1)/2) sqrt(pi) / Gamma(-nu/2)
PcfBoundaryValues pcf_at_zero(double nu);

// Positive scale s(nu) = 2^(nu/2) Gamma(1/2 + nu/2), defined for nu > -1.
double pcf_scale(double nu);

// pcf_at_zero(nu) divided by pcf_scale(nu), evaluated in closed form through
// the reflection identity so that no factorially large intermediate appears:
//   D_nu(0)/s  = cos(pi nu/2) / sqrt(pi)
//   D'_nu(0)/s = sqrt(2/pi) sin(pi nu/2) Gamma(1 + nu/2) / Gamma(1/2 + nu/2)
// Requires nu > -1 (DomainError otherwise).
PcfBoundaryValues pcf_at_zero_scaled(double nu);

}  // namespace dwell::specfun
