#pragma once

#include <cstddef>
#include <vector>

#include "solver/linalg.hpp"

namespace solver {

// Gauss-Seidel, or SOR with relaxation factor omega.
struct IterationMethod {
    enum class Kind { GaussSeidel, Sor };
    Kind kind = Kind::GaussSeidel;
    double omega = 1.0;

    static IterationMethod gauss_seidel() { return {Kind::GaussSeidel, 1.0}; }
    // Checked: omega in (0, 2]. Values outside give a divergent scheme by construction.
    static IterationMethod sor(double omega);
    // Unchecked beyond positivity, for experiments outside the stable range.
    static IterationMethod sor_unchecked(double omega);
};

enum class IterationStatus { Converged, MaxItersReached, NonFinite };

// Full history of a run: X_0..X_K, forward differences, residual norms.
struct IterationTrace {
    std::vector<Vector> iterates;
    std::vector<Vector> differences;  // differences[k] = iterates[k+1] - iterates[k]
    std::vector<double> residuals;    // residuals[k] = ||b - A iterates[k]||_2
    IterationStatus status = IterationStatus::MaxItersReached;
};

// One sweep, ascending row order, already-updated components used for j < i.
// Throws invariant_error on dimension mismatch; a non-finite result is returned
// as-is (the driver encodes it in the trace status).
Vector gauss_seidel_step(const LinearSystem& sys, const Vector& x);

// x'_i = (1-w) x_i + (w/a_ii)(b_i - sum_{j<i} a_ij x'_j - sum_{j>i} a_ij x_j)
Vector sor_step(const LinearSystem& sys, const Vector& x, double omega);

// Sweeps until relative residual <= tol * max(1, ||b||_2)  -> Converged,
// max_iters sweeps done                                     -> MaxItersReached,
// or an iterate goes non-finite / beyond blow_up_limit      -> NonFinite.
// An over-limit but still finite iterate is kept as the trace's last point
// (it is the evidence of blow-up); a NaN/inf iterate is dropped.
IterationTrace run_iteration(const LinearSystem& sys, const Vector& x0, IterationMethod method,
                             std::size_t max_iters, double tol, double blow_up_limit);

}  // namespace solver
