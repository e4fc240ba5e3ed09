#include "dwell/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "dwell/errors.hpp"

namespace dwell::specfun {

namespace {

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// ln Gamma(x) for x > 0.5.
double lanczos_log_gamma(double x) {
    const double z = x - 1.0;
    double series = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        series += kLanczos[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

double pole_distance(double x) {
    if (x > 0.5) return x;
    return std::fabs(x - std::nearbyint(x));
}

}  // namespace

double SignedLogGamma::value() const { return sign * std::exp(log_abs); }

double sin_pi(double x) {
    const double r = x - 2.0 * std::nearbyint(0.5 * x);  // r in [-1, 1], exact
    const double s = r < 0.0 ? -1.0 : 1.0;
    const double a = std::fabs(r);
    constexpr double pi = std::numbers::pi;
    if (a <= 0.25) return s * std::sin(pi * a);
    if (a <= 0.75) return s * std::cos(pi * (0.5 - a));
    return s * std::sin(pi * (1.0 - a));
}

double cos_pi(double x) {
    const double a = std::fabs(x - 2.0 * std::nearbyint(0.5 * x));
    constexpr double pi = std::numbers::pi;
    if (a <= 0.25) return std::cos(pi * a);
    if (a <= 0.75) return std::sin(pi * (0.5 - a));
    return -std::cos(pi * (1.0 - a));
}

SignedLogGamma log_gamma_signed(double x) {
    if (!std::isfinite(x)) throw DomainError("log_gamma_signed: non-finite argument");
    if (pole_distance(x) < kPoleTolerance) {
        throw DomainError("log_gamma_signed: argument on a pole of Gamma");
    }
    if (x > 0.5) return {lanczos_log_gamma(x), 1};
    // Gamma(x) Gamma(1-x) = pi / sin(pi x); Gamma(1-x) > 0 here.
    const double s = sin_pi(x);
    return {std::log(std::numbers::pi) - std::log(std::fabs(s)) - lanczos_log_gamma(1.0 - x),
            s < 0.0 ? -1 : 1};
}

double recip_gamma(double x) {
    if (std::isnan(x)) return x;
    if (x == std::numeric_limits<double>::infinity()) return 0.0;
    if (pole_distance(x) < kPoleTolerance) return 0.0;
    const SignedLogGamma lg = log_gamma_signed(x);
    return lg.sign * std::exp(-lg.log_abs);
}

PcfBoundaryValues pcf_at_zero(double nu) {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    PcfBoundaryValues out;
    out.nu = nu;
    out.d0 = std::exp2(0.5 * nu) * sqrt_pi * recip_gamma(0.5 - 0.5 * nu);
    out.d0_prime = -std::exp2(0.5 * (nu + 1.0)) * sqrt_pi * recip_gamma(-0.5 * nu);
    return out;
}

double pcf_scale(double nu) {
    if (!(nu > -1.0)) throw DomainError("pcf_scale: requires nu > -1");
    return std::exp2(0.5 * nu) * std::exp(log_gamma_signed(0.5 + 0.5 * nu).log_abs);
}

PcfBoundaryValues pcf_at_zero_scaled(double nu) {
    if (!(nu > -1.0)) throw DomainError("pcf_at_zero_scaled: requires nu > -1");
    const double half = 0.5 * nu;
    const double ratio =
        std::exp(log_gamma_signed(1.0 + half).log_abs - log_gamma_signed(0.5 + half).log_abs);
    PcfBoundaryValues out;
    out.nu = nu;
    out.d0 = cos_pi(half) / std::sqrt(std::numbers::pi);
    out.d0_prime = std::sqrt(2.0 / std::numbers::pi) * sin_pi(half) * ratio;
    return out;
}

}  // namespace dwell::specfun
