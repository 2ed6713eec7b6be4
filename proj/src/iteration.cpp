#include "solver/iteration.hpp"

#include <cmath>

namespace solver {

IterationMethod IterationMethod::sor(double omega) {
    if (!(omega > 0.0) || omega > 2.0)
        throw invariant_error("relaxation factor must lie in (0, 2]");
    return {Kind::Sor, omega};
}

IterationMethod IterationMethod::sor_unchecked(double omega) {
    if (!(omega > 0.0)) throw invariant_error("relaxation factor must be positive");
    return {Kind::Sor, omega};
}

Vector gauss_seidel_step(const LinearSystem& sys, const Vector& x) {
    return sor_step(sys, x, 1.0);
}

Vector sor_step(const LinearSystem& sys, const Vector& x, double omega) {
    if (x.size() != sys.size()) throw invariant_error("sweep dimension mismatch");
    const std::size_t n = sys.size();
    Vector y = x;
    for (std::size_t i = 0; i < n; ++i) {
        double s = sys.b[i];
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) s -= sys.a.at(i, j) * y[j];
        y[i] = (1.0 - omega) * x[i] + omega * s / sys.a.at(i, i);
    }
    return y;
}

IterationTrace run_iteration(const LinearSystem& sys, const Vector& x0, IterationMethod method,
                             std::size_t max_iters, double tol, double blow_up_limit) {
    if (x0.size() != sys.size()) throw invariant_error("start vector dimension mismatch");
    if (max_iters < 1) throw invariant_error("max_iters must be >= 1");
    if (!(tol > 0.0) || !(blow_up_limit > 0.0))
        throw invariant_error("tol and blow_up_limit must be positive");

    const double omega = method.kind == IterationMethod::Kind::Sor ? method.omega : 1.0;
    const double nb = std::max(1.0, norm2(sys.b));

    IterationTrace t;
    t.iterates.push_back(x0);
    t.residuals.push_back(residual_norm(sys, x0));
    if (t.residuals[0] <= tol * nb) {
        t.status = IterationStatus::Converged;
        return t;
    }
    t.status = IterationStatus::MaxItersReached;
    for (std::size_t k = 0; k < max_iters; ++k) {
        Vector y = sor_step(sys, t.iterates.back(), omega);
        if (!all_finite(y)) {
            t.status = IterationStatus::NonFinite;
            break;
        }
        Vector d(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) d[i] = y[i] - t.iterates.back()[i];
        t.iterates.push_back(y);
        t.differences.push_back(std::move(d));
        t.residuals.push_back(residual_norm(sys, y));
        if (norm_inf(y) > blow_up_limit) {
            t.status = IterationStatus::NonFinite;
            break;
        }
        if (t.residuals.back() <= tol * nb) {
            t.status = IterationStatus::Converged;
            break;
        }
    }
    return t;
}

}  // namespace solver
