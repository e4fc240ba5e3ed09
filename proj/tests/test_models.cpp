#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dwell/errors.hpp"
#include "dwell/models.hpp"
#include "dwell/rootfind.hpp"

using namespace dwell;
using std::numbers::pi;

namespace {

const UnitsConfig kUnit{1.0};

// Roots of an arbitrary scalar function on [lo, hi] by the library scanner.
std::vector<double> roots_of(const ScalarFn& f, double lo, double hi, int steps = 4096) {
    RootfindConfig cfg;
    cfg.e_min = lo;
    cfg.e_max = hi;
    cfg.coarse_steps = steps;
    std::vector<double> out;
    for (const Bracket& b : scan_brackets(f, cfg)) out.push_back(refine_root(f, b, cfg));
    return out;
}

}  // namespace

TEST_CASE("validate rejects invariant violations by name") {
    CHECK_NOTHROW(validate(M1Params{10, 2, 2}, kUnit));
    CHECK_THROWS_WITH_AS(validate(M2Params{10, 1, 2, 3}, kUnit), "m2: requires a > b", InvalidParams);
    CHECK_THROWS_WITH_AS(validate(M2Params{10, 2, 1, 0.5}, kUnit), "m2: requires c > b", InvalidParams);
    CHECK_THROWS_WITH_AS(validate(M1Params{-1, 2, 2}, kUnit), "m1: requires v0 >= 0", InvalidParams);
    CHECK_THROWS_WITH_AS(validate(M1Params{1, 0, 2}, kUnit), "m1: requires a > 0", InvalidParams);
    CHECK_THROWS_WITH_AS(validate(M3Params{1, 2, 0}, kUnit), "m3: requires hw2 > 0", InvalidParams);
    CHECK_THROWS_WITH_AS(validate(M4Params{1, 2, 2, -1}, kUnit), "m4: requires a >= 0", InvalidParams);
    CHECK_THROWS_WITH_AS(validate(M1Params{1, 2, 2}, UnitsConfig{0.0}), "u must be > 0", InvalidParams);
    CHECK_THROWS_AS(validate(M3Params{NAN, 2, 2}, kUnit), InvalidParams);
}

TEST_CASE("characteristic functions reject non-positive energy") {
    CHECK_THROWS_AS(char_m1(0.0, {10, 2, 2}, kUnit), DomainError);
    CHECK_THROWS_AS(char_m2(-1.0, {10, 2, 1, 3}, kUnit), DomainError);
    CHECK_THROWS_AS(char_m3(0.0, {10, 2, 2}, kUnit), DomainError);
    CHECK_THROWS_AS(char_m4(NAN, {10, 2, 2, 1}, kUnit), DomainError);
}

TEST_CASE("m1 without a barrier is the plain infinite well") {
    const M1Params p{0.0, 2.0, 2.0};
    const auto roots = roots_of([&](double e) { return char_m1(e, p, kUnit).value; }, 1e-9, 12.0);
    REQUIRE(roots.size() == 4);
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(roots[n - 1] - std::pow(n * pi / 4.0, 2)) < 1e-10);
    const auto ev = char_m1(1.0, p, kUnit);
    REQUIRE(ev.derived.k);
    CHECK(*ev.derived.k == doctest::Approx(1.0));
}

TEST_CASE("m1 symmetric roots solve k cot(ka) = -u v0 / 2 or sin(ka) = 0") {
    const M1Params p{10.0, 2.0, 2.0};
    const double a = p.a;
    const auto analytic = roots_of([&](double e) { return char_m1(e, p, kUnit).value; }, 1e-9, 12.0);
    // Even states: k cos(ka) + (u v0/2) sin(ka) = 0; odd states: sin(ka) = 0.
    auto reduced = roots_of(
        [&](double e) {
            const double k = std::sqrt(e);
            return k * std::cos(k * a) + 0.5 * p.v0 * std::sin(k * a);
        },
        1e-9, 12.0);
    for (int n = 1; (n * pi / a) * (n * pi / a) < 12.0; ++n) reduced.push_back(std::pow(n * pi / a, 2));
    std::sort(reduced.begin(), reduced.end());
    REQUIRE(analytic.size() == reduced.size());
    for (std::size_t i = 0; i < analytic.size(); ++i) CHECK(std::abs(analytic[i] - reduced[i]) < 1e-9);
}

TEST_CASE("m2 thin barrier tends to a single well of width a + c") {
    const M2Params p{10.0, 2.0, 1e-9, 2.0};
    const auto roots = roots_of([&](double e) { return char_m2(e, p, kUnit).value; }, 1e-9, 6.0);
    REQUIRE(roots.size() == 3);
    for (int n = 1; n <= 3; ++n) CHECK(std::abs(roots[n - 1] - std::pow(n * pi / 4.0, 2)) < 1e-6);
}

TEST_CASE("m2 is exactly symmetric under swapping the two wells") {
    for (double e = 0.05; e < 30.0; e += 0.173) {
        const double v1 = char_m2(e, {10.0, 2.0, 1.0, 3.5}, kUnit).value;
        const double v2 = char_m2(e, {10.0, 3.5, 1.0, 2.0}, kUnit).value;
        CHECK(v1 == v2);
    }
}

TEST_CASE("m2 and m4 are continuous through E = V0") {
    const double v0 = 10.0;
    const double w = barrier_switch_width(v0);
    CHECK(w == doctest::Approx(1e-5));
    const M2Params m2{v0, 2.0, 1.0, 3.0};
    const M4Params m4{v0, 2.0, 1.3, 1.0};
    for (double off : {0.5, 1.0, 1.5, 3.0}) {
        const double lo2 = char_m2(v0 - off * w, m2, kUnit).value;
        const double hi2 = char_m2(v0 + off * w, m2, kUnit).value;
        const double mid2 = char_m2(v0, m2, kUnit).value;
        CHECK(std::abs(lo2 - mid2) < 1e-3 * std::max(1.0, std::abs(mid2)));
        CHECK(std::abs(hi2 - mid2) < 1e-3 * std::max(1.0, std::abs(mid2)));
        const double lo4 = char_m4(v0 - off * w, m4, kUnit).value;
        const double hi4 = char_m4(v0 + off * w, m4, kUnit).value;
        const double mid4 = char_m4(v0, m4, kUnit).value;
        CHECK(std::abs(lo4 - mid4) < 1e-3 * std::max(1.0, std::abs(mid4)));
        CHECK(std::abs(hi4 - mid4) < 1e-3 * std::max(1.0, std::abs(mid4)));
    }
    // Series and closed forms agree just outside the switch window.
    const auto below = char_m2(v0 - 1.01 * w, m2, kUnit);
    const auto inside = char_m2(v0 - 0.99 * w, m2, kUnit);
    CHECK(std::abs(below.value - inside.value) < 1e-6 * std::max(1.0, std::abs(below.value)));
    CHECK_FALSE(below.derived.above_barrier);
    CHECK(char_m2(v0 + 1.0, m2, kUnit).derived.above_barrier);
}

TEST_CASE("no poles: values finite and moderate over dense scans") {
    const std::vector<std::pair<ModelParams, double>> cases = {
        {M1Params{10, 2, 2}, 30.0},   {M1Params{20, 5, 25}, 60.0},  {M2Params{10, 2, 1, 3}, 30.0},
        {M2Params{10, 2, 1, 6}, 30.0}, {M3Params{10, 2, 0.06}, 60.0}, {M3Params{10, 2, 3}, 60.0},
        {M4Params{10, 2, 0.5, 1}, 60.0}, {M4Params{10, 2, 3, 1}, 60.0},
    };
    for (const auto& [model, top] : cases) {
        for (int i = 1; i <= 20000; ++i) {
            const double v = characteristic(top * i / 20000.0, model, kUnit).value;
            REQUIRE(std::isfinite(v));
            CHECK(std::abs(v) < 1e30);
        }
    }
}

TEST_CASE("m3 without a barrier has oscillator levels for equal frequencies") {
    const M3Params p{0.0, 2.0, 2.0};
    const auto roots = roots_of([&](double e) { return char_m3(e, p, kUnit).value; }, 1e-9, 10.0);
    REQUIRE(roots.size() == 5);
    for (int n = 0; n < 5; ++n) CHECK(std::abs(roots[n] - (2.0 * n + 1.0)) < 1e-9);
    const auto ev = char_m3(3.0, p, kUnit);
    CHECK(*ev.derived.nu1 == 1.0);
    CHECK(*ev.derived.alpha2 == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("m3 odd levels ignore the delta for equal frequencies") {
    for (double v0 : {0.0, 1.0, 10.0, 100.0}) {
        const M3Params p{v0, 2.0, 2.0};
        CHECK(char_m3(3.0, p, kUnit).value == 0.0);
        CHECK(char_m3(7.0, p, kUnit).value == 0.0);
        CHECK(char_m3(3.0, p, kUnit, Normalization::Reference).value == 0.0);
    }
}

TEST_CASE("m4 without separation reduces to m3") {
    for (double e = 0.1; e < 12.0; e += 0.37) {
        const double m4 = char_m4(e, {10.0, 2.0, 1.3, 0.0}, kUnit).value;
        const double m3 = char_m3(e, {0.0, 2.0, 1.3}, kUnit).value;
        CHECK(m4 == doctest::Approx(m3).epsilon(1e-12));
    }
}

TEST_CASE("normalizer choice leaves the root set unchanged") {
    const std::vector<ModelParams> cases = {M3Params{10, 2, 2}, M3Params{10, 2, 0.7}, M4Params{10, 2, 2, 1},
                                            M4Params{10, 2, 1.3, 1}};
    for (const auto& model : cases) {
        auto scaled = [&](double e) { return characteristic(e, model, kUnit).value; };
        auto reference = [&](double e) {
            if (const auto* p3 = std::get_if<M3Params>(&model)) return char_m3(e, *p3, kUnit, Normalization::Reference).value;
            return char_m4(e, std::get<M4Params>(model), kUnit, Normalization::Reference).value;
        };
        const auto r1 = roots_of(scaled, 1e-9, 20.0);
        const auto r2 = roots_of(reference, 1e-9, 20.0);
        REQUIRE(r1.size() == r2.size());
        for (std::size_t i = 0; i < r1.size(); ++i) CHECK(std::abs(r1[i] - r2[i]) < 1e-9);
    }
}

TEST_CASE("levels are non-decreasing in the barrier strength") {
    const std::vector<ModelParams> bases = {M1Params{0, 2, 1.3}, M2Params{0, 2, 1, 3}, M3Params{0, 2, 1.3},
                                            M4Params{0, 2, 2, 1}, M4Params{0, 2, 1.3, 1}};
    for (const auto& base : bases) {
        std::vector<double> prev;
        for (double v0 = 0.0; v0 <= 20.0; v0 += 1.0) {
            ModelParams m = base;
            std::visit([&](auto& p) { p.v0 = v0; }, m);
            const auto levels = solve_levels(m, kUnit, 5);
            if (!prev.empty()) {
                for (std::size_t i = 0; i < levels.size(); ++i) CHECK(levels[i] >= prev[i] - 1e-9);
            }
            prev = levels;
        }
    }
}

TEST_CASE("level_upper_bound covers the requested number of levels") {
    const std::vector<ModelParams> cases = {M1Params{10, 2, 0.1}, M1Params{1e4, 2, 2}, M2Params{1e3, 2, 1, 5},
                                            M3Params{1e3, 2, 0.06}, M4Params{1e3, 2, 3, 1}};
    for (const auto& model : cases) {
        for (int n : {1, 3, 5}) {
            const auto levels = solve_levels(model, kUnit, n);
            CHECK(levels.back() <= level_upper_bound(model, kUnit, n) * (1 + 1e-12));
        }
    }
}
