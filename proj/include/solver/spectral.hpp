#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "solver/aitken.hpp"
#include "solver/iteration.hpp"
#include "solver/linalg.hpp"

namespace solver {

struct singular_matrix_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct eigensolver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Eigenvalues in descending-modulus order; complex pairs carry +-im.
struct SpectralReport {
    std::vector<std::complex<double>> eigenvalues;
    double dominant_modulus = 0.0;
    bool dominant_is_real = true;
    std::size_t iterations_used = 0;  // QR steps across all deflation blocks
};

// Hessenberg reduction + implicit double-shift QR with 2x2 real-Schur blocks.
// Independent of every ratio-based estimate it is used to validate.
// max_sweeps = 0 selects the default 100 * n. Throws eigensolver_error on
// non-convergence, invariant_error for non-square or n > 64 input.
SpectralReport eigenvalues_qr(const DenseMatrix& m, double tol = 1e-10,
                              std::size_t max_sweeps = 0);

// Dense LU solve with partial pivoting; throws singular_matrix_error.
Vector lu_solve(const DenseMatrix& a, const Vector& rhs);

// x_k + (I - m)^-1 e_k: exact limit of the stationary iteration from any
// trajectory point. Test oracle only, excluded from performance paths.
Vector exact_fixed_point(const DenseMatrix& m, const Vector& x_k, const Vector& e_k);

// estimate_ratio over every consecutive difference pair of a trace, in order.
// Pairs with a vanishing denominator yield NaN sentinel entries.
std::vector<double> ratio_series(const IterationTrace& trace, RatioMode mode);

}  // namespace solver
