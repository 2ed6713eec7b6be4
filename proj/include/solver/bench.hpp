#pragma once

// Benchmark harness: per-omega SOR iteration counts with and without passive
// difference extrapolation, against an exact-solution stopping rule.

#include <complex>
#include <cstddef>
#include <vector>

#include "solver/iteration.hpp"
#include "solver/linalg.hpp"

namespace solver {

struct BenchRow {
    double omega = 1.0;
    // Sweep count to reach the exact-solution tolerance; 0 means never reached.
    std::size_t iters_sor = 0;
    std::size_t iters_sor_plus_extrap = 0;
    // iters_sor / iters_sor_plus_extrap; NaN when either count is 0.
    double acceleration = 0.0;
    // Dominant eigenvalue of the SOR iteration matrix at this omega.
    std::complex<double> dominant_eig{0.0, 0.0};
};

struct BenchConfig {
    std::size_t order = 1;          // extrapolation depth per sweep
    std::size_t max_sweeps = 100000;
    double tol = 1e-13;             // on the max-norm solution error
    double singular_guard = 1e-8;   // reject ratio estimates with |1 - lambda| below this
};

// Runs SOR from x0 and reports the first sweep count k with
// ||x_k - x*||_inf <= tol (x* from a direct solve), plus the first k at which
// the passively extrapolated candidate meets the same tolerance. The order-1
// candidate at sweep k is x_{k-1} + D_k / (1 - lambda) with
// lambda = <D_k, D_{k-1}> / <D_{k-1}, D_{k-1}>; higher orders repeat the same
// correction on the extrapolated sequence itself. Candidates never feed back
// into the iteration.
BenchRow bench_single(const LinearSystem& sys, const Vector& x0, double omega, const BenchConfig& cfg = {});

// One row per omega, in input order.
std::vector<BenchRow> bench_sweep(const LinearSystem& sys, const Vector& x0, const std::vector<double>& omegas,
                                  const BenchConfig& cfg = {});

}  // namespace solver
