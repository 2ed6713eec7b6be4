#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "solver/aitken.hpp"
#include "solver/iteration.hpp"
#include "solver/problems.hpp"
#include "solver/spectral.hpp"

using namespace solver;

namespace {
Vector one(double v) { return Vector::of({v}); }
}  // namespace

TEST_CASE("two-vector ratio estimates") {
    CHECK(estimate_ratio(Vector::of({1, 2}), Vector::of({-2, -4}), RatioMode::signed_rayleigh()) == -2.0);
    CHECK(estimate_ratio(Vector::of({3, 4}), Vector::of({6, 8}), RatioMode::norm_quotient()) == 2.0);
    CHECK(estimate_ratio(Vector::of({2, 5}), Vector::of({-6, 1}), RatioMode::componentwise(0)) == -3.0);
    CHECK_THROWS_AS(estimate_ratio(Vector::of({0, 0}), Vector::of({1, 1}), RatioMode::signed_rayleigh()),
                    singular_ratio_error);
    CHECK_THROWS_AS(estimate_ratio(Vector::of({0, 1}), Vector::of({1, 1}), RatioMode::componentwise(0)),
                    singular_ratio_error);
}

TEST_CASE("divergent 2x2 ratio is recovered exactly") {
    const auto p = builtin("div-2x2");
    const auto t = run_iteration(p.system, p.default_start, IterationMethod::gauss_seidel(), 100,
                                 1e-10, 1e15);
    CHECK(estimate_ratio(t.differences[1], t.differences[2], RatioMode::signed_rayleigh()) == -15.0);
    CHECK(estimate_ratio(t.differences[1], t.differences[2], RatioMode::componentwise(0)) == -15.0);
}

TEST_CASE("windowed estimate prefers the newest agreeing pair, then the most consistent one") {
    // plateau at 2 below a ramp: the agreeing mid-window pair wins
    std::vector<Vector> d1{one(1), one(2), one(4), one(8), one(80), one(1600)};
    const auto r1 = estimate_ratio_window(d1, RatioMode::signed_rayleigh(), 1e-6);
    CHECK(r1.value == 2.0);
    CHECK(r1.stable);
    CHECK(r1.history.size() == 5);
    // no agreement anywhere: the pair with the smallest normalized gap wins
    std::vector<Vector> d2{one(1), one(2), one(8), one(32.8)};
    const auto r2 = estimate_ratio_window(d2, RatioMode::signed_rayleigh(), 1e-6);
    CHECK(r2.value == doctest::Approx(4.1).epsilon(1e-12));
    CHECK(!r2.stable);
    // a single ratio is reported unstable
    std::vector<Vector> d3{one(3), one(6)};
    const auto r3 = estimate_ratio_window(d3, RatioMode::signed_rayleigh(), 1e-6);
    CHECK(r3.value == 2.0);
    CHECK(!r3.stable);
}

TEST_CASE("windowed estimate on the 2x2 showcase locks onto the dominant eigenvalue") {
    const auto p = builtin("ex1-2x2");
    const auto t = run_iteration(p.system, p.default_start, IterationMethod::gauss_seidel(), 15,
                                 1e-30, 1e50);
    const auto r = estimate_ratio_window(t.differences, RatioMode::signed_rayleigh(), 1e-6);
    CHECK(r.stable);
    CHECK(std::abs(r.value - -0.5) <= 1e-12);
}

TEST_CASE("geometric-limit extrapolation") {
    // showcase rows: anchor -2121.5, difference 3186.75, ratio -1/2
    const auto a = extrapolate(Vector::of({-2121.5, -2123.5}), Vector::of({3186.75, 3186.75}), -0.5);
    CHECK(a[0] == 3.0);
    CHECK(a[1] == 1.0);
    // divergent anchor 676, difference -10800, ratio -15
    CHECK(extrapolate(one(676), one(-10800), -15.0)[0] == 1.0);
    // zero difference: the anchor is already the limit
    CHECK(extrapolate(one(5), Vector::of({0}), 0.3)[0] == 5.0);
    CHECK_THROWS_AS(extrapolate(one(1), one(1), 1.0), singular_ratio_error);
    CHECK_THROWS_AS(extrapolate(one(1), one(1), 1.0 + 5e-9), singular_ratio_error);
    CHECK_THROWS_AS(extrapolate(one(1), one(1), std::nan("")), singular_ratio_error);
}

TEST_CASE("three-point scalar extrapolation") {
    CHECK(aitken_delta_squared(5, 2, 3.5) == 3.0);
    CHECK(std::abs(aitken_delta_squared(1065.25, -528.13, 268.56) - 3.0) <= 0.02);
    // exact on L + c r^k, including a divergent ratio
    CHECK(aitken_delta_squared(5, -5, 35) == 3.0);       // L=3, c=2, r=-4
    CHECK(aitken_delta_squared(5, 4, 3.5) == 3.0);       // L=3, c=2, r=1/2
    CHECK_THROWS_AS(aitken_delta_squared(4, 4, 4), singular_ratio_error);
}

TEST_CASE("table construction validates its window") {
    std::vector<Vector> raw{one(0), one(1), one(1.5)};
    CHECK_THROWS_AS(build_table(raw, 0), invariant_error);
    CHECK_THROWS_AS(build_table(raw, 2), invariant_error);  // needs order+2 = 4 points
    const auto t = build_table(raw, 1);
    CHECK(t.order == 1);
    CHECK(t.layers.size() == 2);
    CHECK(t.layers[1].size() == 2);
}

TEST_CASE("table layers collapse a pure single-eigenvector sequence to the limit") {
    // x_k = x* + r^k v with r = -15: every layer-1 point equals x* exactly
    const Vector xstar = Vector::of({3, -2});
    const Vector v = Vector::of({1, 3});
    std::vector<Vector> raw;
    double rk = 1.0;
    for (int k = 0; k < 5; ++k, rk *= -15.0)
        raw.push_back(Vector::of({xstar[0] + rk * v[0], xstar[1] + rk * v[1]}));
    const auto t = build_table(raw, 1);
    REQUIRE(t.order == 1);
    CHECK(t.lambdas[0] == -15.0);
    CHECK(t.stable[0]);
    for (const auto& p : t.layers[1]) {
        CHECK(p[0] == xstar[0]);
        CHECK(p[1] == xstar[1]);
    }
}

TEST_CASE("deflation recovers the top two growth rates of the divergent 4x4") {
    const auto p = builtin("div-4x4");
    const auto t = run_iteration(p.system, p.default_start, IterationMethod::gauss_seidel(), 30,
                                 1e-30, 1e300);
    REQUIRE(t.iterates.size() == 31);
    const auto tab = build_table(t.iterates, 2);
    REQUIRE(tab.order == 2);
    CHECK(std::abs(tab.lambdas[0] - 16.70030007143648) <= 1e-9);
    CHECK(std::abs(tab.lambdas[1] - -5.7742216053903404) <= 1e-5);
    CHECK(tab.layers[1].size() == 30);
    CHECK(tab.layers[2].size() == 29);
}

TEST_CASE("deflation recovers the top two growth rates of the divergent 6x6") {
    const auto p = builtin("div-6x6");
    const auto t = run_iteration(p.system, p.default_start, IterationMethod::gauss_seidel(), 30,
                                 1e-30, 1e300);
    const auto tab = build_table(t.iterates, 2);
    REQUIRE(tab.order == 2);
    CHECK(std::abs(tab.lambdas[0] - 75.796638515975388) <= 1e-8);
    CHECK(std::abs(tab.lambdas[1] - 11.704130560629785) <= 1e-4);
}

TEST_CASE("requested order is capped by dimension") {
    const auto p = builtin("div-4x4");
    const auto t = run_iteration(p.system, p.default_start, IterationMethod::gauss_seidel(), 51,
                                 1e-30, 1e300);
    REQUIRE(t.iterates.size() == 52);  // order-50 request needs >= 52 points
    const auto tab = build_table(t.iterates, 50);
    CHECK(tab.order <= 4);
    CHECK(tab.lambdas.size() == tab.order);
    // the same request over a shorter window violates the precondition
    const std::vector<Vector> head(t.iterates.begin(), t.iterates.begin() + 31);
    CHECK_THROWS_AS(build_table(head, 50), invariant_error);
}

TEST_CASE("safeguarded solve: convergent 3x3") {
    const auto p = builtin("ex2-3x3");
    SolveConfig cfg;
    cfg.window = 9;
    const auto rep = solve_extrapolated(p.system, p.default_start, IterationMethod::gauss_seidel(),
                                        1, cfg);
    CHECK(rep.status == SolveStatus::Converged);
    CHECK(rep.outer_iterations <= 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(rep.solution[i] - 1.0) <= 1e-9);
    CHECK(rep.final_residual <= cfg.tol * std::max(1.0, norm2(p.system.b)));
}

TEST_CASE("safeguarded solve: divergent 2x2 snaps to the limit in one outer iteration") {
    const auto p = builtin("div-2x2");
    const auto rep = solve_extrapolated(p.system, p.default_start, IterationMethod::gauss_seidel(),
                                        1, SolveConfig{});
    CHECK(rep.status == SolveStatus::Converged);
    CHECK(rep.outer_iterations == 1);
    CHECK(std::abs(rep.solution[0] - 1.0) <= 1e-12);
    CHECK(std::abs(rep.solution[1] - 1.0) <= 1e-12);
    REQUIRE(!rep.lambda_estimates.empty());
    CHECK(std::abs(rep.lambda_estimates[0] - -15.0) <= 1e-9);
}

TEST_CASE("safeguarded solve: divergent 4x4 at order 5") {
    const auto p = builtin("div-4x4");
    SolveConfig cfg;
    cfg.window = 12;
    cfg.tol = 1e-12;
    const auto rep = solve_extrapolated(p.system, p.default_start, IterationMethod::gauss_seidel(),
                                        5, cfg);
    CHECK(rep.status == SolveStatus::Converged);
    CHECK(rep.outer_iterations <= 10);
    const double ref[4] = {3.054225004761563, -2.904223059942874, -0.661832433353327,
                           -4.154545738306979};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(rep.solution[i] - ref[i]) <= 1e-6);
    CHECK(rep.lambda_estimates.size() == 4);  // order capped at n
}

TEST_CASE("safeguarded solve: divergent 6x6 at order 4") {
    const auto p = builtin("div-6x6");
    SolveConfig cfg;
    cfg.window = 12;
    cfg.tol = 1e-12;
    const auto rep = solve_extrapolated(p.system, p.default_start, IterationMethod::gauss_seidel(),
                                        4, cfg);
    CHECK(rep.status == SolveStatus::Converged);
    const double ref[6] = {-0.563147393304287, -0.731832157439239, 1.857839885254053,
                           -6.666186315796603, -1.725114498846410, -1.833877505834098};
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(rep.solution[i] - ref[i]) <= 1e-6);
}

TEST_CASE("safeguarded solve: accepted residual never increases with more outer iterations") {
    const auto p = builtin("div-6x6");
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t m = 1; m <= 8; ++m) {
        SolveConfig cfg;
        cfg.window = 9;
        cfg.tol = 1e-14;  // unreachable: forces the full m outer iterations
        cfg.max_outer = m;
        const auto rep = solve_extrapolated(p.system, p.default_start,
                                            IterationMethod::gauss_seidel(), 4, cfg);
        CHECK(rep.final_residual <= prev * (1.0 + 1e-12));
        prev = rep.final_residual;
    }
}

TEST_CASE("safeguarded solve validates its configuration") {
    const auto p = builtin("ex2-3x3");
    SolveConfig small;
    small.window = 5;  // < order + 3
    CHECK_THROWS_AS(
        solve_extrapolated(p.system, p.default_start, IterationMethod::gauss_seidel(), 3, small),
        invariant_error);
    CHECK_THROWS_AS(
        solve_extrapolated(p.system, p.default_start, IterationMethod::gauss_seidel(), 0, SolveConfig{}),
        invariant_error);
    SolveConfig zero;
    zero.max_outer = 0;
    CHECK_THROWS_AS(
        solve_extrapolated(p.system, p.default_start, IterationMethod::gauss_seidel(), 1, zero),
        invariant_error);
}

TEST_CASE("solve trace rows carry raw sweeps and per-layer estimates") {
    const auto p = builtin("ex2-3x3");
    SolveConfig cfg;
    cfg.window = 9;
    std::vector<SolveTraceRow> rows;
    solve_extrapolated(p.system, p.default_start, IterationMethod::gauss_seidel(), 1, cfg, &rows);
    REQUIRE(!rows.empty());
    bool saw_raw = false, saw_layer = false;
    for (const auto& r : rows) {
        if (r.layer == -1) {
            saw_raw = true;
            CHECK(std::isnan(r.lambda));
            CHECK(r.residual_norm >= 0.0);
        } else {
            saw_layer = true;
            CHECK(r.layer >= 1);
            CHECK(std::isfinite(r.lambda));
        }
        CHECK(r.outer >= 1);
    }
    CHECK(saw_raw);
    CHECK(saw_layer);
}
