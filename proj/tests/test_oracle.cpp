#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dwell/errors.hpp"
#include "dwell/oracle.hpp"
#include "dwell/rootfind.hpp"

using namespace dwell;
using std::numbers::pi;

namespace {

const UnitsConfig kUnit{1.0};

TridiagonalHamiltonian small(std::vector<double> diag, std::vector<double> off) {
    TridiagonalHamiltonian t;
    t.diag = std::move(diag);
    t.offdiag = std::move(off);
    t.h = 1.0;
    return t;
}

std::vector<double> single_grid(const ModelParams& m, int n, int points, double e_top) {
    OracleConfig cfg;
    cfg.n_points = points;
    cfg.richardson = false;
    cfg.e_top = e_top;
    return oracle_levels(m, kUnit, n, cfg);
}

}  // namespace

TEST_CASE("sturm count on small matrices") {
    CHECK(sturm_count(small({1, 2}, {0}), 1.5) == 1);
    const auto t = small({2, 2}, {-1});
    CHECK(sturm_count(t, 0.9) == 0);
    CHECK(sturm_count(t, 1.1) == 1);
    CHECK(sturm_count(t, 3.1) == 2);
    const auto three = lowest_eigenvalues(small({2, 2, 2}, {-1, -1}), 3, 1e-13);
    CHECK(three[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(three[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(three[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(lowest_eigenvalues(t, 3, 1e-12), InvalidParams);
    CHECK(lowest_eigenvalues(t, 0, 1e-12).empty());
}

TEST_CASE("sturm count is monotone in the energy") {
    const auto t = build_hamiltonian(M2Params{10, 2, 1, 3}, kUnit, {});
    int prev = 0;
    for (double e = 0.0; e < 60.0; e += 0.05) {
        const int c = sturm_count(t, e);
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(sturm_count(t, 1e12) == static_cast<int>(t.diag.size()));
}

TEST_CASE("hamiltonian structure") {
    OracleConfig cfg;
    cfg.n_points = 2000;
    const auto t = build_hamiltonian(M1Params{0.0, 2.0, 2.0}, kUnit, cfg);
    CHECK(t.model_tag == ModelKind::M1);
    CHECK(t.offdiag.size() + 1 == t.diag.size());
    CHECK(t.x_min == doctest::Approx(-2.0 + t.h));
    for (double o : t.offdiag) CHECK(o != 0.0);
    const auto e = lowest_eigenvalues(t, 1, 1e-12);
    CHECK(std::abs(e[0] - std::pow(pi / 4.0, 2)) < 1e-5);

    const auto delta = build_hamiltonian(M1Params{10.0, 2.0, 3.0}, kUnit, cfg);
    REQUIRE(delta.delta_node);
    const double x0 = delta.x_min + delta.h * static_cast<double>(*delta.delta_node);
    CHECK(std::abs(x0) < 1e-9);
}

TEST_CASE("oracle domains") {
    const OracleConfig cfg;
    const Domain m1 = oracle_domain(M1Params{1, 2, 3}, kUnit, cfg, 10);
    CHECK(m1.x_left == -2.0);
    CHECK(m1.x_right == 3.0);
    const Domain m2 = oracle_domain(M2Params{1, 2, 1, 4}, kUnit, cfg, 10);
    CHECK(m2.x_left == -2.0);
    CHECK(m2.x_right == 4.0);
    // Harmonic walls sit well above the top energy.
    const double e_top = 9.0;
    for (const ModelParams& m : {ModelParams{M3Params{10, 2, 0.5}}, ModelParams{M4Params{10, 2, 0.5, 1}}}) {
        const Domain d = oracle_domain(m, kUnit, cfg, e_top);
        CHECK(potential(m, kUnit, d.x_left) >= 4.0 * e_top);
        CHECK(potential(m, kUnit, d.x_right) >= 4.0 * e_top);
    }
}

TEST_CASE("harmonic ground state and odd level") {
    OracleConfig cfg;
    cfg.e_top = 9.0;
    const auto t = build_hamiltonian(M3Params{0.0, 2.0, 2.0}, kUnit, cfg);
    CHECK(std::abs(lowest_eigenvalues(t, 1, 1e-12)[0] - 1.0) <= 1e-4);

    const auto m3 = oracle_levels(M3Params{10.0, 2.0, 2.0}, kUnit, 2);
    CHECK(m3[0] > 1.0);
    CHECK(std::abs(m3[1] - 3.0) <= 1e-4);
}

TEST_CASE("richardson oracle against closed forms") {
    const auto m1 = oracle_levels(M1Params{0.0, 2.0, 2.0}, kUnit, 1);
    CHECK(std::abs(m1[0] - std::pow(pi / 4.0, 2)) <= 1e-7);
    const auto m3 = oracle_levels(M3Params{0.0, 2.0, 2.0}, kUnit, 5);
    for (int n = 0; n < 5; ++n) CHECK(std::abs(m3[n] - (2.0 * n + 1.0)) <= 1e-6);
    const auto m4 = oracle_levels(M4Params{10.0, 2.0, 2.0, 0.0}, kUnit, 5);
    for (int n = 0; n < 5; ++n) CHECK(std::abs(m4[n] - (2.0 * n + 1.0)) <= 1e-6);
}

TEST_CASE("halving h cuts the single-grid error by about four") {
    SUBCASE("infinite well") {
        const M1Params m{0.0, 2.0, 2.0};
        const auto coarse = single_grid(m, 4, 999, 15.0);
        const auto fine = single_grid(m, 4, 1999, 15.0);
        for (int n = 1; n <= 4; ++n) {
            const double exact = std::pow(n * pi / 4.0, 2);
            const double ratio = (coarse[n - 1] - exact) / (fine[n - 1] - exact);
            CHECK(ratio >= 3.5);
            CHECK(ratio <= 4.5);
        }
    }
    SUBCASE("oscillator") {
        const M3Params m{0.0, 2.0, 2.0};
        const auto coarse = single_grid(m, 5, 1499, 15.0);
        const auto fine = single_grid(m, 5, 2999, 15.0);
        for (int n = 0; n < 5; ++n) {
            const double exact = 2.0 * n + 1.0;
            const double ratio = (coarse[n] - exact) / (fine[n] - exact);
            CHECK(ratio >= 3.5);
            CHECK(ratio <= 4.5);
        }
    }
    SUBCASE("barrier models against the extrapolated truth") {
        const std::vector<ModelParams> cases = {M1Params{10, 2, 1.3}, M2Params{10, 2, 1, 3},
                                                M3Params{10, 2, 1.3}, M4Params{10, 2, 1.3, 1}};
        for (const auto& m : cases) {
            const double e_top = 1.5 * level_upper_bound(m, kUnit, 4);
            const auto h1 = single_grid(m, 4, 1999, e_top);
            const auto h2 = single_grid(m, 4, 3999, e_top);
            const auto h4 = single_grid(m, 4, 7999, e_top);
            for (int n = 0; n < 4; ++n) {
                const double truth = (4.0 * h4[n] - h2[n]) / 3.0;
                const double ratio = (h1[n] - truth) / (h2[n] - truth);
                CHECK(ratio >= 3.5);
                CHECK(ratio <= 4.5);
            }
        }
    }
}

TEST_CASE("harmonic truncation error is negligible") {
    OracleConfig base;
    OracleConfig wide;
    wide.turning_point_margin = 4.0;
    wide.n_points = 2 * default_points(ModelKind::M3);
    for (const ModelParams& m : {ModelParams{M3Params{10, 2, 0.5}}, ModelParams{M4Params{10, 2, 1.3, 1}}}) {
        const auto a = oracle_levels(m, kUnit, 5, base);
        const auto b = oracle_levels(m, kUnit, 5, wide);
        for (int i = 0; i < 5; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-6);
    }
}

TEST_CASE("oracle agrees with the analytic roots") {
    const std::vector<std::pair<ModelParams, double>> cases = {
        {M1Params{10, 2, 2}, 2e-3},   {M1Params{10, 2, 0.979}, 2e-3}, {M2Params{10, 2, 1, 3}, 2e-3},
        {M2Params{10, 2, 1, 2}, 2e-3}, {M3Params{10, 2, 0.5}, 5e-3},   {M4Params{10, 2, 2.5, 1}, 5e-3},
    };
    for (const auto& [m, tol] : cases) {
        const auto analytic = solve_levels(m, kUnit, 5);
        const auto oracle = oracle_levels(m, kUnit, 5);
        for (int i = 0; i < 5; ++i) CHECK(std::abs(analytic[i] - oracle[i]) <= tol);
        CHECK(oracle_count_below(m, kUnit, analytic[4] + 1e-3) == 5);
        for (int i = 1; i < 5; ++i) CHECK(oracle[i] - oracle[i - 1] > 1e-9);
    }
    for (double e : {2.0, 8.0, 12.0}) {
        RootfindConfig cfg;
        cfg.e_max = e;
        const M1Params m{10, 2, 2};
        const auto brackets = scan_brackets([&](double x) { return char_m1(x, m, kUnit).value; }, cfg);
        CHECK(oracle_count_below(m, kUnit, e) == static_cast<int>(brackets.size()));
    }
}

TEST_CASE("wronskian separates eigenvalues from other energies") {
    const M1Params well{0.0, 2.0, 2.0};
    CHECK(wronskian_constancy(well, kUnit, std::pow(pi / 4.0, 2)) <= 1e-6);
    CHECK(wronskian_constancy(well, kUnit, 0.9) >= 0.1);
    const M3Params m3{10.0, 2.0, 2.0};
    CHECK(wronskian_constancy(m3, kUnit, 3.0) <= 1e-5);
    CHECK(wronskian_constancy(m3, kUnit, 2.5) >= 0.05);
}

TEST_CASE("oracle config validation") {
    OracleConfig cfg;
    cfg.n_points = 100;
    CHECK_THROWS_AS(validate(cfg), InvalidParams);
    cfg = {};
    cfg.turning_point_margin = 1.0;
    CHECK_THROWS_AS(validate(cfg), InvalidParams);
    cfg = {};
    cfg.e_top = -1.0;
    CHECK_THROWS_AS(oracle_levels(M3Params{1, 1, 1}, kUnit, 2, cfg), InvalidParams);
    CHECK(default_points(ModelKind::M1) == 4000);
    CHECK(default_points(ModelKind::M4) == 6000);
}
