#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace solver {

// Thrown by constructors and operations when an input breaks a documented
// invariant (dimension mismatch, non-finite entry, zero diagonal, ...).
struct invariant_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dense row-major matrix of finite doubles.
struct DenseMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> entries;  // n_rows * n_cols, row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : n_rows(rows), n_cols(cols), entries(rows * cols, 0.0) {}

    // Throws invariant_error on ragged rows or non-finite entries.
    static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static DenseMatrix identity(std::size_t n);

    double at(std::size_t i, std::size_t j) const { return entries[i * n_cols + j]; }
    double& at(std::size_t i, std::size_t j) { return entries[i * n_cols + j]; }
    bool square() const { return n_rows == n_cols; }
};

// Finite-entry vector; construction via of() rejects NaN and +-inf.
struct Vector {
    std::vector<double> entries;

    Vector() = default;
    explicit Vector(std::size_t n) : entries(n, 0.0) {}

    static Vector of(std::vector<double> values);  // throws invariant_error on non-finite
    static Vector zeros(std::size_t n) { return Vector(n); }
    static Vector ones(std::size_t n);

    std::size_t size() const { return entries.size(); }
    double operator[](std::size_t i) const { return entries[i]; }
    double& operator[](std::size_t i) { return entries[i]; }
};

// Square system A x = b with every |a_ii| > 0, checked at construction.
struct LinearSystem {
    DenseMatrix a;
    Vector b;

    LinearSystem(DenseMatrix a_in, Vector b_in);  // throws invariant_error
    std::size_t size() const { return a.n_rows; }
};

struct LduParts {
    DenseMatrix l;  // strictly lower
    DenseMatrix d;  // diagonal
    DenseMatrix u;  // strictly upper
};

Vector mat_vec(const DenseMatrix& m, const Vector& x);

// Entrywise copy split, l + d + u == a bit-exactly.
LduParts split_ldu(const DenseMatrix& a);

// Forward substitution; lower must have nonzero diagonal.
Vector forward_solve(const DenseMatrix& lower, const Vector& rhs);

// M = -(L+D)^-1 U, assembled column-by-column via forward_solve.
// Analysis/oracle path only; the iteration itself uses scalar sweeps.
DenseMatrix build_iteration_matrix(const LinearSystem& sys);

// M_w = -(D+wL)^-1 [wU + (w-1)D]; omega > 0.
DenseMatrix build_sor_iteration_matrix(const LinearSystem& sys, double omega);

// ||b - A x||_2
double residual_norm(const LinearSystem& sys, const Vector& x);

double norm2(const Vector& v);
double norm_inf(const Vector& v);
double dot(const Vector& a, const Vector& b);
bool all_finite(const Vector& v);

}  // namespace solver
