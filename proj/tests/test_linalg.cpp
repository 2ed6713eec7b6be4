#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "solver/linalg.hpp"

using namespace solver;

namespace {
LinearSystem showcase2() {
    return LinearSystem(DenseMatrix::from_rows({{2, 1}, {1, -1}}), Vector::of({7, 2}));
}
LinearSystem showcase3() {
    return LinearSystem(DenseMatrix::from_rows({{3, 1, 1}, {-1, 2, 3}, {1, 1, -4}}), Vector::of({5, 4, -2}));
}
}  // namespace

TEST_CASE("matrix and vector constructors reject malformed input") {
    CHECK_THROWS_AS(DenseMatrix::from_rows({{1, 2}, {3}}), invariant_error);
    CHECK_THROWS_AS(DenseMatrix::from_rows({{1, std::nan("")}, {3, 4}}), invariant_error);
    CHECK_THROWS_AS(Vector::of({1.0, std::numeric_limits<double>::infinity()}), invariant_error);
    CHECK(DenseMatrix::from_rows({{1, 2}, {3, 4}}).at(1, 0) == 3.0);
    CHECK(DenseMatrix::identity(3).at(1, 1) == 1.0);
    CHECK(DenseMatrix::identity(3).at(1, 2) == 0.0);
}

TEST_CASE("system construction checks shape and diagonal") {
    CHECK_THROWS_AS(LinearSystem(DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}}), Vector::of({1, 1})),
                    invariant_error);
    CHECK_THROWS_AS(LinearSystem(DenseMatrix::identity(2), Vector::of({1, 1, 1})), invariant_error);
    // a zero diagonal is reported with its row index
    try {
        LinearSystem(DenseMatrix::from_rows({{1, 0}, {3, 0}}), Vector::of({1, 1}));
        CHECK(false);
    } catch (const invariant_error& e) {
        CHECK(std::string(e.what()).find("diagonal") != std::string::npos);
        CHECK(std::string(e.what()).find('1') != std::string::npos);
    }
}

TEST_CASE("mat_vec, norms, dot") {
    const auto m = DenseMatrix::from_rows({{1, 2}, {3, 4}});
    const auto y = mat_vec(m, Vector::of({5, 6}));
    CHECK(y[0] == 17.0);
    CHECK(y[1] == 39.0);
    CHECK(norm2(Vector::of({3, 4})) == 5.0);
    CHECK(norm_inf(Vector::of({3, -7})) == 7.0);
    CHECK(dot(Vector::of({1, 2}), Vector::of({3, 4})) == 11.0);
    CHECK(all_finite(Vector::of({1, 2})));
    CHECK_THROWS_AS(mat_vec(m, Vector::of({1, 2, 3})), invariant_error);
}

TEST_CASE("split_ldu reassembles the matrix exactly") {
    const auto s = showcase3();
    const auto p = split_ldu(s.a);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(p.l.at(i, j) + p.d.at(i, j) + p.u.at(i, j) == s.a.at(i, j));
            if (j >= i) CHECK(p.l.at(i, j) == 0.0);
            if (j <= i) CHECK(p.u.at(i, j) == 0.0);
            if (j != i) CHECK(p.d.at(i, j) == 0.0);
        }
}

TEST_CASE("forward substitution") {
    const auto l = DenseMatrix::from_rows({{2, 0}, {1, -1}});
    const auto x = forward_solve(l, Vector::of({7, 2}));
    CHECK(x[0] == 3.5);
    CHECK(x[1] == 1.5);
    CHECK_THROWS_AS(forward_solve(DenseMatrix::from_rows({{0, 0}, {1, 1}}), Vector::of({1, 1})),
                    invariant_error);
}

TEST_CASE("iteration matrix of the 2x2 showcase") {
    const auto m = build_iteration_matrix(showcase2());
    CHECK(m.at(0, 0) == 0.0);
    CHECK(m.at(1, 0) == 0.0);
    CHECK(std::abs(m.at(0, 1) - -0.5) <= 1e-15);
    CHECK(std::abs(m.at(1, 1) - -0.5) <= 1e-15);
}

TEST_CASE("iteration matrix of the 3x3 showcase") {
    const auto m = build_iteration_matrix(showcase3());
    const double want[3][3] = {{0, -1.0 / 3, -1.0 / 3}, {0, -1.0 / 6, -5.0 / 3}, {0, -1.0 / 8, -0.5}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(m.at(i, j) - want[i][j]) <= 1e-15);
}

TEST_CASE("relaxed iteration matrix reduces to the plain one at omega 1") {
    const auto s = showcase3();
    const auto m1 = build_iteration_matrix(s);
    const auto mw = build_sor_iteration_matrix(s, 1.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(m1.at(i, j) - mw.at(i, j)) <= 1e-14);
    CHECK_THROWS_AS(build_sor_iteration_matrix(s, 0.0), invariant_error);
    CHECK_THROWS_AS(build_sor_iteration_matrix(s, -1.0), invariant_error);
}

TEST_CASE("residual norm spot values") {
    const LinearSystem d4(DenseMatrix::from_rows({{20, 234, 123, 20},
                                                  {136, 56, 120, 125},
                                                  {123, 120, 76, 25},
                                                  {20, 125, 145, 20}}),
                          Vector::of({-783, -346, -127, -481}));
    CHECK(std::abs(residual_norm(d4, Vector::ones(4)) - 1689.085847433457) <= 1e-9);
    const Vector ref = Vector::of(
        {3.054225004761563, -2.904223059942874, -0.661832433353327, -4.154545738306979});
    CHECK(residual_norm(d4, ref) <= 1e-11);
}
