#include "solver/linalg.hpp"

#include <cmath>
#include <string>

namespace solver {

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    DenseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.n_cols)
            throw invariant_error("matrix row " + std::to_string(i) + " has ragged length");
        for (std::size_t j = 0; j < m.n_cols; ++j) {
            if (!std::isfinite(rows[i][j]))
                throw invariant_error("matrix entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is not finite");
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Vector Vector::of(std::vector<double> values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw invariant_error("vector entry " + std::to_string(i) + " is not finite");
    Vector v;
    v.entries = std::move(values);
    return v;
}

Vector Vector::ones(std::size_t n) {
    Vector v(n);
    for (auto& e : v.entries) e = 1.0;
    return v;
}

LinearSystem::LinearSystem(DenseMatrix a_in, Vector b_in) : a(std::move(a_in)), b(std::move(b_in)) {
    if (!a.square()) throw invariant_error("coefficient matrix must be square");
    if (b.size() != a.n_rows) throw invariant_error("right-hand side length must match matrix dimension");
    for (std::size_t i = 0; i < a.n_rows; ++i)
        if (a.at(i, i) == 0.0)
            throw invariant_error("zero diagonal entry at row " + std::to_string(i));
}

Vector mat_vec(const DenseMatrix& m, const Vector& x) {
    if (m.n_cols != x.size()) throw invariant_error("mat_vec dimension mismatch");
    Vector y(m.n_rows);
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.n_cols; ++j) s += m.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

LduParts split_ldu(const DenseMatrix& a) {
    if (!a.square()) throw invariant_error("split_ldu requires a square matrix");
    const std::size_t n = a.n_rows;
    LduParts p{DenseMatrix(n, n), DenseMatrix(n, n), DenseMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = a.at(i, j);
            if (i > j)
                p.l.at(i, j) = v;
            else if (i == j)
                p.d.at(i, j) = v;
            else
                p.u.at(i, j) = v;
        }
    return p;
}

Vector forward_solve(const DenseMatrix& lower, const Vector& rhs) {
    if (!lower.square() || lower.n_rows != rhs.size())
        throw invariant_error("forward_solve dimension mismatch");
    const std::size_t n = lower.n_rows;
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (lower.at(i, i) == 0.0)
            throw invariant_error("forward_solve: zero diagonal at row " + std::to_string(i));
        double s = rhs[i];
        for (std::size_t j = 0; j < i; ++j) s -= lower.at(i, j) * x[j];
        x[i] = s / lower.at(i, i);
    }
    return x;
}

DenseMatrix build_iteration_matrix(const LinearSystem& sys) {
    const std::size_t n = sys.size();
    auto parts = split_ldu(sys.a);
    DenseMatrix ld(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) ld.at(i, j) = parts.l.at(i, j) + parts.d.at(i, j);
    DenseMatrix m(n, n);
    Vector col(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = -parts.u.at(i, j);
        Vector mj = forward_solve(ld, col);
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = mj[i];
    }
    return m;
}

DenseMatrix build_sor_iteration_matrix(const LinearSystem& sys, double omega) {
    if (!(omega > 0.0)) throw invariant_error("relaxation factor must be positive");
    const std::size_t n = sys.size();
    auto parts = split_ldu(sys.a);
    DenseMatrix dwl(n, n);  // D + w L
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            dwl.at(i, j) = parts.d.at(i, j) + omega * parts.l.at(i, j);
    DenseMatrix m(n, n);
    Vector col(n);
    for (std::size_t j = 0; j < n; ++j) {
        // column j of -(wU + (w-1)D)
        for (std::size_t i = 0; i < n; ++i)
            col[i] = -(omega * parts.u.at(i, j) + (omega - 1.0) * parts.d.at(i, j));
        Vector mj = forward_solve(dwl, col);
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = mj[i];
    }
    return m;
}

double residual_norm(const LinearSystem& sys, const Vector& x) {
    if (x.size() != sys.size()) throw invariant_error("residual_norm dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        double r = sys.b[i];
        for (std::size_t j = 0; j < sys.size(); ++j) r -= sys.a.at(i, j) * x[j];
        s += r * r;
    }
    return std::sqrt(s);
}

double norm2(const Vector& v) {
    double s = 0.0;
    for (double e : v.entries) s += e * e;
    return std::sqrt(s);
}

double norm_inf(const Vector& v) {
    double m = 0.0;
    for (double e : v.entries) m = std::max(m, std::abs(e));
    return m;
}

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool all_finite(const Vector& v) {
    for (double e : v.entries)
        if (!std::isfinite(e)) return false;
    return true;
}

}  // namespace solver
