#include "solver/bench.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <optional>

#include "solver/spectral.hpp"

namespace solver {

namespace {

double max_abs_err(const Vector& x, const Vector& xstar) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - xstar[i]));
    return m;
}

// One deflation pass: z'_j = z_j + (z_{j+1} - z_j) / (1 - lambda) with lambda
// the Rayleigh quotient of the two newest differences. Empty result when the
// sequence is too short, the quotient is undefined, or 1 - lambda is within
// the guard.
std::vector<Vector> deflate_once(const std::vector<Vector>& z, double guard) {
    if (z.size() < 3) return {};
    const std::size_t m = z.size();
    const std::size_t n = z[0].size();
    Vector d_new = Vector::zeros(n);
    Vector d_prev = Vector::zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        d_new[i] = z[m - 1][i] - z[m - 2][i];
        d_prev[i] = z[m - 2][i] - z[m - 3][i];
    }
    const double den = dot(d_prev, d_prev);
    if (!(den > 0.0)) return {};
    const double lambda = dot(d_new, d_prev) / den;
    if (!std::isfinite(lambda) || std::abs(1.0 - lambda) <= guard) return {};
    std::vector<Vector> out;
    out.reserve(m - 1);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        Vector v = Vector::zeros(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = z[j][i] + (z[j + 1][i] - z[j][i]) / (1.0 - lambda);
        out.push_back(std::move(v));
    }
    return out;
}

// Extrapolated candidate after `order` deflation passes over the newest
// iterates; nullopt when any pass is unavailable. The candidate only depends
// on the last order+2 iterates (each pass consumes one point), so callers
// pass a bounded tail rather than the full history.
std::optional<Vector> extrap_candidate(const std::deque<Vector>& tail, std::size_t order, double guard) {
    std::vector<Vector> z(tail.begin(), tail.end());
    for (std::size_t p = 0; p < order; ++p) {
        z = deflate_once(z, guard);
        if (z.empty()) return std::nullopt;
    }
    return z.back();
}

}  // namespace

BenchRow bench_single(const LinearSystem& sys, const Vector& x0, double omega, const BenchConfig& cfg) {
    if (cfg.order < 1) throw invariant_error("bench order must be >= 1");
    if (!(omega > 0.0)) throw invariant_error("bench omega must be positive");
    BenchRow row;
    row.omega = omega;

    const Vector xstar = lu_solve(sys.a, sys.b);

    std::deque<Vector> tail{x0};
    std::size_t sor_count = 0;
    std::size_t gse_count = 0;
    for (std::size_t k = 1; k <= cfg.max_sweeps; ++k) {
        Vector y = sor_step(sys, tail.back(), omega);
        if (!all_finite(y)) break;
        tail.push_back(std::move(y));
        if (tail.size() > cfg.order + 2) tail.pop_front();
        if (sor_count == 0 && max_abs_err(tail.back(), xstar) <= cfg.tol) sor_count = k;
        if (gse_count == 0) {
            if (auto cand = extrap_candidate(tail, cfg.order, cfg.singular_guard);
                cand && all_finite(*cand) && max_abs_err(*cand, xstar) <= cfg.tol)
                gse_count = k;
        }
        if (sor_count != 0 && gse_count != 0) break;
    }

    row.iters_sor = sor_count;
    row.iters_sor_plus_extrap = gse_count;
    row.acceleration = (sor_count != 0 && gse_count != 0)
                           ? static_cast<double>(sor_count) / static_cast<double>(gse_count)
                           : std::numeric_limits<double>::quiet_NaN();

    const auto spectrum = eigenvalues_qr(build_sor_iteration_matrix(sys, omega));
    row.dominant_eig = spectrum.eigenvalues.front();
    return row;
}

std::vector<BenchRow> bench_sweep(const LinearSystem& sys, const Vector& x0, const std::vector<double>& omegas,
                                  const BenchConfig& cfg) {
    std::vector<BenchRow> rows;
    rows.reserve(omegas.size());
    for (double w : omegas) rows.push_back(bench_single(sys, x0, w, cfg));
    return rows;
}

}  // namespace solver
