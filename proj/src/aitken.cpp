#include "solver/aitken.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace solver {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Vector> forward_diffs(const std::vector<Vector>& pts) {
    std::vector<Vector> d;
    d.reserve(pts.size() > 0 ? pts.size() - 1 : 0);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        Vector e(pts[k].size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = pts[k + 1][i] - pts[k][i];
        d.push_back(std::move(e));
    }
    return d;
}
}  // namespace

double estimate_ratio(const Vector& e_prev, const Vector& e_next, RatioMode mode) {
    if (e_prev.size() != e_next.size()) throw invariant_error("ratio operands differ in length");
    switch (mode.kind) {
        case RatioMode::Kind::SignedRayleigh: {
            const double den = dot(e_prev, e_prev);
            if (den == 0.0) throw singular_ratio_error("ratio denominator is the zero vector");
            return dot(e_next, e_prev) / den;
        }
        case RatioMode::Kind::NormQuotient: {
            const double den = norm2(e_prev);
            if (den == 0.0) throw singular_ratio_error("ratio denominator is the zero vector");
            return norm2(e_next) / den;
        }
        case RatioMode::Kind::Componentwise: {
            if (mode.component >= e_prev.size())
                throw invariant_error("componentwise ratio index out of range");
            const double den = e_prev[mode.component];
            if (std::abs(den) <= 1e-300)
                throw singular_ratio_error("componentwise ratio denominator vanishes");
            return e_next[mode.component] / den;
        }
    }
    throw invariant_error("unknown ratio mode");
}

RatioEstimate estimate_ratio_window(const std::vector<Vector>& diffs, RatioMode mode,
                                    double ratio_tol) {
    RatioEstimate est;
    est.mode = mode;
    for (std::size_t k = 1; k < diffs.size(); ++k) {
        double r = kNaN;
        try {
            r = estimate_ratio(diffs[k - 1], diffs[k], mode);
        } catch (const singular_ratio_error&) {
            // zero difference inside the window: keep a NaN slot, the scans skip it
        }
        est.history.push_back(r);
    }
    const auto& rs = est.history;
    if (rs.empty()) {
        est.value = kNaN;
        return est;
    }
    if (rs.size() == 1) {
        est.value = rs[0];
        return est;
    }
    for (std::size_t k = rs.size() - 1; k >= 1; --k) {
        if (std::abs(rs[k] - rs[k - 1]) <= ratio_tol * std::max(1.0, std::abs(rs[k]))) {
            est.value = rs[k];
            est.stable = true;
            return est;
        }
    }
    // No agreeing pair: take the most mutually consistent one. On deflated
    // layers the newest ratios carry the previous layer's estimation error
    // amplified by (lambda_prev/lambda_cur)^k, so "latest" would be the worst pick.
    double best_d = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    bool found = false;
    for (std::size_t k = 1; k < rs.size(); ++k) {
        if (!std::isfinite(rs[k]) || !std::isfinite(rs[k - 1])) continue;
        const double d = std::abs(rs[k] - rs[k - 1]) / std::max(1.0, std::abs(rs[k]));
        if (d < best_d) {
            best_d = d;
            best_k = k;
            found = true;
        }
    }
    est.value = found ? rs[best_k] : kNaN;
    return est;
}

Vector extrapolate(const Vector& x_k, const Vector& e_k, double lambda1, double singular_guard) {
    if (x_k.size() != e_k.size()) throw invariant_error("extrapolate operands differ in length");
    if (!std::isfinite(lambda1) || std::abs(1.0 - lambda1) <= singular_guard)
        throw singular_ratio_error("eigenvalue estimate at 1: geometric series sum undefined");
    Vector y(x_k.size());
    const double f = 1.0 - lambda1;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x_k[i] + e_k[i] / f;
    return y;
}

double aitken_delta_squared(double x0, double x1, double x2) {
    const double den = x2 - 2.0 * x1 + x0;
    const double scale = std::max({std::abs(x0), std::abs(x1), std::abs(x2), 1.0});
    if (std::abs(den) <= 1e-300 * scale)
        throw singular_ratio_error("three-point denominator vanishes");
    return (x2 * x0 - x1 * x1) / den;
}

ExtrapolationTable build_table(const std::vector<Vector>& raw, std::size_t order, RatioMode mode,
                               double ratio_tol, double singular_guard) {
    if (order < 1) throw invariant_error("extrapolation order must be >= 1");
    if (raw.size() < order + 2)
        throw invariant_error("raw window too short: need at least order + 2 iterates");
    const std::size_t n = raw[0].size();
    const std::size_t order_eff = std::min(order, std::min<std::size_t>(n, 6));

    ExtrapolationTable t;
    t.window = raw.size();
    t.layers.push_back(raw);
    for (std::size_t i = 0; i < order_eff; ++i) {
        const auto& pts = t.layers.back();
        if (pts.size() < 3) break;
        auto diffs = forward_diffs(pts);
        RatioEstimate est = estimate_ratio_window(diffs, mode, ratio_tol);
        const double lam = est.value;
        if (!std::isfinite(lam) || std::abs(1.0 - lam) <= singular_guard) break;
        std::vector<Vector> next;
        next.reserve(diffs.size());
        const double f = 1.0 - lam;
        for (std::size_t k = 0; k < diffs.size(); ++k) {
            Vector p(n);
            for (std::size_t c = 0; c < n; ++c) p[c] = pts[k][c] + diffs[k][c] / f;
            next.push_back(std::move(p));
        }
        t.layers.push_back(std::move(next));
        t.lambdas.push_back(lam);
        t.stable.push_back(est.stable);
    }
    t.order = t.lambdas.size();
    return t;
}

SolveReport solve_extrapolated(const LinearSystem& sys, const Vector& x0, IterationMethod method,
                               std::size_t order, const SolveConfig& cfg,
                               std::vector<SolveTraceRow>* trace) {
    if (x0.size() != sys.size()) throw invariant_error("start vector dimension mismatch");
    if (order < 1) throw invariant_error("extrapolation order must be >= 1");
    if (cfg.window < order + 3)
        throw invariant_error("window must be >= order + 3");
    if (!(cfg.tol > 0.0) || !(cfg.ratio_tol > 0.0) || !(cfg.singular_guard > 0.0) ||
        !(cfg.blow_up_limit > 0.0) || cfg.max_outer < 1)
        throw invariant_error("solver config values must be positive");

    const std::size_t n = sys.size();
    const std::size_t order_eff = std::min(order, std::min<std::size_t>(n, 6));
    const double omega = method.kind == IterationMethod::Kind::Sor ? method.omega : 1.0;
    const double nb = std::max(1.0, norm2(sys.b));

    SolveReport rep;
    Vector x = x0;
    std::size_t stall = 0;
    bool last_table_empty = false;

    for (std::size_t outer = 1; outer <= cfg.max_outer; ++outer) {
        const double r_start = residual_norm(sys, x);
        if (r_start <= cfg.tol * nb) {
            rep.solution = x;
            rep.outer_iterations = outer - 1;
            rep.final_residual = r_start;
            rep.status = SolveStatus::Converged;
            return rep;
        }

        // Inner window; truncate before any non-finite or over-limit point.
        std::vector<Vector> raw{x};
        for (std::size_t k = 0; k < cfg.window; ++k) {
            Vector y = sor_step(sys, raw.back(), omega);
            if (!all_finite(y) || norm_inf(y) > cfg.blow_up_limit) break;
            raw.push_back(std::move(y));
            ++rep.inner_sweeps_total;
        }
        if (trace)
            for (std::size_t k = 1; k < raw.size(); ++k)
                trace->push_back({outer, k, -1, kNaN, residual_norm(sys, raw[k])});

        ExtrapolationTable table;
        if (raw.size() >= 3) {
            const std::size_t fit = std::min(order_eff, raw.size() - 2);
            table = build_table(raw, fit, RatioMode::signed_rayleigh(), cfg.ratio_tol,
                                cfg.singular_guard);
        } else {
            table.layers.push_back(raw);
            table.window = raw.size();
        }
        last_table_empty = table.lambdas.empty();
        if (rep.lambda_estimates.empty() && !table.lambdas.empty())
            rep.lambda_estimates = table.lambdas;
        if (trace)
            for (std::size_t i = 1; i < table.layers.size(); ++i) {
                const auto& layer = table.layers[i];
                const Vector& newest = layer.back();
                const double rn =
                    all_finite(newest) ? residual_norm(sys, newest) : kNaN;
                trace->push_back({outer, layer.size(), static_cast<int>(i),
                                  table.lambdas[i - 1], rn});
            }

        // Residual-best finite point across all extrapolated layers. The newest
        // top-layer point inherits estimation error amplified over the window,
        // so on divergent systems it is usually the worst candidate, not the best.
        const Vector* cand = nullptr;
        double cand_res = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < table.layers.size(); ++i)
            for (const Vector& p : table.layers[i]) {
                if (!all_finite(p)) continue;
                const double rp = residual_norm(sys, p);
                if (rp < cand_res) {
                    cand = &p;
                    cand_res = rp;
                }
            }

        if (cand != nullptr && cand_res < r_start) {
            x = *cand;
            stall = 0;
        } else {
            const Vector* best_raw = &raw[0];
            double best_res = std::numeric_limits<double>::infinity();
            for (const Vector& p : raw) {
                const double rp = residual_norm(sys, p);
                if (rp < best_res) {
                    best_raw = &p;
                    best_res = rp;
                }
            }
            if (best_res < r_start) {
                x = *best_raw;
                stall = 0;
            } else if (++stall >= 2) {
                rep.solution = x;
                rep.outer_iterations = outer;
                rep.final_residual = residual_norm(sys, x);
                rep.status = last_table_empty ? SolveStatus::SingularRatio : SolveStatus::Stalled;
                return rep;
            }
        }
    }
    rep.solution = x;
    rep.outer_iterations = cfg.max_outer;
    rep.final_residual = residual_norm(sys, x);
    rep.status = rep.final_residual <= cfg.tol * nb ? SolveStatus::Converged
                                                    : SolveStatus::MaxItersReached;
    return rep;
}

}  // namespace solver
