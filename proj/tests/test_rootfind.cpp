#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dwell/errors.hpp"
#include "dwell/oracle.hpp"
#include "dwell/rootfind.hpp"

using namespace dwell;
using std::numbers::pi;

TEST_CASE("scan brackets the zeros of sin(pi sqrt E)") {
    RootfindConfig cfg;
    cfg.e_min = 0.5;
    cfg.e_max = 9.5;
    cfg.coarse_steps = 64;
    const ScalarFn f = [](double e) { return std::sin(pi * std::sqrt(e)); };
    const auto brackets = scan_brackets(f, cfg);
    REQUIRE(brackets.size() == 3);
    const double roots[] = {1.0, 4.0, 9.0};
    for (int i = 0; i < 3; ++i) {
        CHECK(brackets[i].lo <= roots[i]);
        CHECK(brackets[i].hi >= roots[i]);
        CHECK(std::abs(refine_root(f, brackets[i], cfg) - roots[i]) < 1e-10);
    }
}

TEST_CASE("scan nudges grid nodes that land exactly on a root") {
    RootfindConfig cfg;
    cfg.e_min = 0.0;
    cfg.e_max = 64.0;
    cfg.coarse_steps = 64;
    const ScalarFn f = [](double e) { return e == 10.0 ? 0.0 : e - 10.0; };
    const auto brackets = scan_brackets(f, cfg);
    REQUIRE(brackets.size() == 1);
    CHECK(std::abs(refine_root(f, brackets[0], cfg) - 10.0) < 1e-10);
}

TEST_CASE("scan finds a doublet narrower than one coarse cell") {
    RootfindConfig cfg;
    cfg.e_min = 0.0;
    cfg.e_max = 10.0;
    cfg.coarse_steps = 64;
    const ScalarFn f = [](double e) { return (e - 3.0) * (e - 3.0001); };
    const auto brackets = scan_brackets(f, cfg);
    REQUIRE(brackets.size() == 2);
    CHECK(std::abs(refine_root(f, brackets[0], cfg) - 3.0) < 1e-10);
    CHECK(std::abs(refine_root(f, brackets[1], cfg) - 3.0001) < 1e-10);
}

TEST_CASE("scan throws when an expected count cannot be reached") {
    RootfindConfig cfg;
    cfg.max_subdivision_depth = 3;
    const ScalarFn f = [](double e) { return 1.0 + e * e; };
    try {
        scan_brackets(f, cfg, 1);
        FAIL("expected CountMismatch");
    } catch (const CountMismatch& e) {
        CHECK(e.found() == 0);
        CHECK(e.expected() == 1);
    }
}

TEST_CASE("bracket count matches the oracle Sturm count") {
    const M1Params p{10.0, 2.0, 2.0};
    const UnitsConfig units{1.0};
    RootfindConfig cfg;
    cfg.e_max = 12.0;
    const int expected = oracle_count_below(p, units, 12.0);
    const auto brackets = scan_brackets([&](double e) { return char_m1(e, p, units).value; }, cfg, expected);
    CHECK(static_cast<int>(brackets.size()) == expected);
    CHECK(expected == 4);
}

TEST_CASE("refine_root") {
    RootfindConfig cfg;
    const ScalarFn line = [](double e) { return e - 2.0; };
    CHECK(std::abs(refine_root(line, {1.0, 3.0, -1.0, 1.0}, cfg) - 2.0) <= cfg.tol_abs);
    CHECK_THROWS_AS(refine_root(line, {3.0, 1.0, 1.0, -1.0}, cfg), InvalidParams);
    CHECK_THROWS_AS(refine_root(line, {2.5, 3.0, 0.5, 1.0}, cfg), InvalidParams);

    const M1Params well{0.0, 2.0, 2.0};
    const ScalarFn m1 = [&](double e) { return char_m1(e, well, {1.0}).value; };
    const double root = refine_root(m1, {0.55, 0.65, m1(0.55), m1(0.65)}, cfg);
    CHECK(std::abs(root - 0.6168502750680849) < 1e-10);
}

TEST_CASE("rootfind config validation") {
    RootfindConfig cfg;
    cfg.coarse_steps = 32;
    CHECK_THROWS_AS(validate(cfg), InvalidParams);
    cfg = {};
    cfg.e_max = cfg.e_min;
    CHECK_THROWS_AS(validate(cfg), InvalidParams);
    cfg = {};
    cfg.tol_abs = 0.0;
    CHECK_THROWS_AS(validate(cfg), InvalidParams);
    CHECK_NOTHROW(validate(RootfindConfig{}));
}

TEST_CASE("solve_levels closed forms and oracle agreement") {
    const UnitsConfig unit{1.0};
    const auto m3 = solve_levels(M3Params{0.0, 2.0, 2.0}, unit, 5);
    for (int n = 0; n < 5; ++n) CHECK(std::abs(m3[n] - (2 * n + 1.0)) < 1e-8);

    const M1Params fig3{10.0, 2.0, 2.0};
    const auto levels = solve_levels(fig3, unit, 4);
    const auto oracle = oracle_levels(fig3, unit, 4);
    REQUIRE(levels.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(levels[i] - oracle[i]) <= 2e-3);

    const M1Params fig4{20.0, 5.0, 5.0};
    const UnitsConfig u4{0.2625};
    const auto l4 = solve_levels(fig4, u4, 4);
    for (std::size_t i = 1; i < l4.size(); ++i) CHECK(l4[i] > l4[i - 1]);
    CHECK(l4[0] < 5.0);
    CHECK(l4[1] < 5.0);
    const auto o4 = oracle_levels(fig4, u4, 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(l4[i] - o4[i]) <= 2e-3);
}

TEST_CASE("solve_levels output is strictly ordered and deterministic") {
    const UnitsConfig unit{1.0};
    const std::vector<ModelParams> cases = {
        M1Params{10, 2, 0.3}, M1Params{10, 2, 2}, M1Params{100, 2, 2.0001}, M2Params{10, 2, 1, 3},
        M2Params{10, 2, 1, 1.05}, M2Params{30, 2, 1, 3}, M3Params{10, 2, 0.06}, M3Params{10, 2, 2.0},
        M4Params{10, 2, 0.5, 1}, M4Params{10, 2, 1.999, 1},
    };
    for (const auto& model : cases) {
        const auto a = solve_levels(model, unit, 6);
        const auto b = solve_levels(model, unit, 6);
        REQUIRE(a.size() == 6);
        CHECK(a == b);
        for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] - a[i - 1] > 2e-10);
    }
}

TEST_CASE("solve_levels errors") {
    CHECK_THROWS_AS(solve_levels(M1Params{10, 2, 2}, {1.0}, 0), InvalidParams);
    CHECK_THROWS_AS(solve_levels(M2Params{10, 1, 2, 3}, {1.0}, 2), InvalidParams);
    CHECK_THROWS_AS(solve_levels(M1Params{10, 2, 2}, {1e-4}, 4), SolverError);
}
