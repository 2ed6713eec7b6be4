#include "solver/problems.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace solver {

namespace {

// clang-format off
constexpr double kHeat21[21 * 21] = {
    -20, 4, 0, 0, 0, 0, 0, 4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    4, -20, 4, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 4, -20, 4, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 4, -20, 4, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 4, -20, 4, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 4, -20, 4, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 4, -20, 0, 0, 0, 0, 0, 1, 4, 0, 0, 0, 0, 0, 0, 0,
    4, 1, 0, 0, 0, 0, 0, -20, 4, 0, 0, 0, 0, 0, 4, 1, 0, 0, 0, 0, 0,
    1, 4, 1, 0, 0, 0, 0, 4, -20, 4, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0,
    0, 1, 4, 1, 0, 0, 0, 0, 4, -20, 4, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0,
    0, 0, 1, 4, 1, 0, 0, 0, 0, 4, -20, 4, 0, 0, 0, 0, 1, 4, 1, 0, 0,
    0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 4, -20, 4, 0, 0, 0, 0, 1, 4, 1, 0,
    0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 4, -20, 4, 0, 0, 0, 0, 1, 4, 1,
    0, 0, 0, 0, 0, 1, 4, 0, 0, 0, 0, 0, 4, -20, 0, 0, 0, 0, 0, 1, 4,
    0, 0, 0, 0, 0, 0, 0, 4, 1, 0, 0, 0, 0, 0, -20, 4, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 4, -20, 4, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 4, -20, 4, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 4, -20, 4, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 4, -20, 4, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 4, 1, 0, 0, 0, 0, 4, -20, 4,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 4, 0, 0, 0, 0, 0, 4, -20,
};
// clang-format on

LinearSystem make_system(std::vector<std::vector<double>> rows, std::vector<double> b) {
    return LinearSystem(DenseMatrix::from_rows(rows), Vector::of(std::move(b)));
}

NamedProblem make_ex1() {
    NamedProblem p{"ex1-2x2", make_system({{2, 1}, {1, -1}}, {7, 2}),
                   Vector::of({3, 1}), std::vector<double>{-0.5, 0.0},
                   Vector::of({10000, 4250})};
    return p;
}

NamedProblem make_ex2() {
    NamedProblem p{"ex2-3x3", make_system({{3, 1, 1}, {-1, 2, 3}, {1, 1, -4}}, {5, 4, -2}),
                   Vector::of({1, 1, 1}),
                   std::vector<double>{-0.8192459912371084, 0.15257932457044177, 0.0},
                   Vector::of({10, -8, 5})};
    return p;
}

NamedProblem make_div2() {
    NamedProblem p{"div-2x2", make_system({{2, 10}, {15, -5}}, {12, 10}),
                   Vector::of({1, 1}), std::vector<double>{-15.0, 0.0},
                   Vector::of({8, 10})};
    return p;
}

NamedProblem make_div4() {
    NamedProblem p{"div-4x4",
                   make_system({{20, 234, 123, 20},
                                {136, 56, 120, 125},
                                {123, 120, 76, 25},
                                {20, 125, 145, 20}},
                               {-783, -346, -127, -481}),
                   Vector::of({3.054225004761563, -2.904223059942874, -0.661832433353327,
                               -4.154545738306979}),
                   std::vector<double>{16.70030007143648, -5.7742216053903404,
                                       -0.085523954767935673, 0.0},
                   Vector::ones(4)};
    return p;
}

NamedProblem make_div6() {
    NamedProblem p{"div-6x6",
                   make_system({{400, 35, 432, 10, 4820, 0},
                                {35, 600, 485, 30, 20, 2000},
                                {196, 10, 545, 48, 34, 974},
                                {0, 30, 48, 631, 20, 347},
                                {4820, 20, 34, 545, 768, 0},
                                {0, 2000, 800, 0, 874, 657}},
                               {-7830, -3460, -1270, -4810, -7623.8, -2690}),
                   Vector::of({-0.563147393304287, -0.731832157439239, 1.857839885254053,
                               -6.666186315796603, -1.725114498846410, -1.833877505834098}),
                   std::vector<double>{75.796638515975388, 11.704130560629785,
                                       0.36812494359732528, 0.027943199473835629, 0.0, 0.0},
                   Vector::ones(6)};
    return p;
}

NamedProblem make_heat() {
    GridProblem g{8, 4, 2.5, {0.0, 100.0, 0.0, 0.0}};
    NamedProblem p{"heatflow-21", heatflow_system(g), std::nullopt, std::nullopt,
                   Vector::zeros(21)};
    return p;
}

}  // namespace

const std::vector<std::string>& builtin_ids() {
    static const std::vector<std::string> ids{"ex1-2x2",  "ex2-3x3", "heatflow-21",
                                              "div-2x2",  "div-4x4", "div-6x6"};
    return ids;
}

NamedProblem builtin(const std::string& id) {
    if (id == "ex1-2x2") return make_ex1();
    if (id == "ex2-3x3") return make_ex2();
    if (id == "div-2x2") return make_div2();
    if (id == "div-4x4") return make_div4();
    if (id == "div-6x6") return make_div6();
    if (id == "heatflow-21") return make_heat();
    throw invariant_error("unknown builtin problem id: " + id);
}

LinearSystem heatflow_system(const GridProblem& g) {
    if (g.p < 2 || g.q < 2) throw invariant_error("grid needs p >= 2 and q >= 2");
    if (!(g.h > 0.0)) throw invariant_error("grid spacing must be positive");
    const std::size_t nx = g.p - 1, ny = g.q - 1;
    const std::size_t n = nx * ny;
    DenseMatrix a(n, n);
    Vector b(n);
    // boundary temperature at grid node (i, j), or NaN for interior
    auto boundary_temp = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> double {
        const bool on_x = i == 0 || i == static_cast<std::ptrdiff_t>(g.p);
        const bool on_y = j == 0 || j == static_cast<std::ptrdiff_t>(g.q);
        if (!on_x && !on_y) return std::numeric_limits<double>::quiet_NaN();
        const double ex = i == 0 ? g.boundary.left : g.boundary.right;
        const double ey = j == 0 ? g.boundary.bottom : g.boundary.top;
        if (on_x && on_y) return 0.5 * (ex + ey);  // corner: average of adjacent edges
        return on_x ? ex : ey;
    };
    auto node = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> std::size_t {
        return static_cast<std::size_t>(j - 1) * nx + static_cast<std::size_t>(i - 1);
    };
    struct Off { std::ptrdiff_t di, dj; double w; };
    static constexpr Off kStencil[] = {{1, 0, 4.0},  {-1, 0, 4.0}, {0, 1, 4.0},  {0, -1, 4.0},
                                       {1, 1, 1.0},  {1, -1, 1.0}, {-1, 1, 1.0}, {-1, -1, 1.0}};
    for (std::ptrdiff_t j = 1; j < static_cast<std::ptrdiff_t>(g.q); ++j)
        for (std::ptrdiff_t i = 1; i < static_cast<std::ptrdiff_t>(g.p); ++i) {
            const std::size_t r = node(i, j);
            a.at(r, r) = -20.0;
            for (const auto& o : kStencil) {
                const double t = boundary_temp(i + o.di, j + o.dj);
                if (std::isnan(t))
                    a.at(r, node(i + o.di, j + o.dj)) = o.w;
                else
                    b[r] -= o.w * t;
            }
        }
    return LinearSystem(std::move(a), std::move(b));
}

double sor_optimal_omega(std::size_t p, std::size_t q) {
    if (p < 2 || q < 2) throw invariant_error("sor_optimal_omega needs p >= 2 and q >= 2");
    const double c = std::cos(std::numbers::pi / static_cast<double>(p)) +
                     std::cos(std::numbers::pi / static_cast<double>(q));
    return 4.0 / (2.0 + std::sqrt(4.0 - c * c));
}

const DenseMatrix& heatflow21_reference() {
    static const DenseMatrix m = [] {
        DenseMatrix mm(21, 21);
        for (std::size_t i = 0; i < 21 * 21; ++i) mm.entries[i] = kHeat21[i];
        return mm;
    }();
    return m;
}

}  // namespace solver
