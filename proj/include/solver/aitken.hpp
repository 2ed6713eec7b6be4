#pragma once

#include <cstddef>
#include <vector>

#include "solver/iteration.hpp"
#include "solver/linalg.hpp"

namespace solver {

// Thrown when a ratio or extrapolation denominator is singular:
// eigenvalue estimate at 1 (geometric series sum undefined) or an
// exactly-zero difference where a quotient is required.
struct singular_ratio_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RatioMode {
    enum class Kind { SignedRayleigh, NormQuotient, Componentwise };
    Kind kind = Kind::SignedRayleigh;
    std::size_t component = 0;  // used by Componentwise only

    static RatioMode signed_rayleigh() { return {Kind::SignedRayleigh, 0}; }
    static RatioMode norm_quotient() { return {Kind::NormQuotient, 0}; }
    static RatioMode componentwise(std::size_t i) { return {Kind::Componentwise, i}; }
};

// Windowed eigenvalue estimate from a difference sequence. stable is true only
// when the two consecutive ratios it was read from agree to ratio_tol.
struct RatioEstimate {
    double value = 0.0;
    bool stable = false;
    std::vector<double> history;  // ratio per consecutive difference pair, oldest first
    RatioMode mode;
};

// Two-vector ratio: SignedRayleigh <e_next,e_prev>/<e_prev,e_prev>,
// NormQuotient ||e_next||/||e_prev||, Componentwise e_next[i]/e_prev[i].
// Throws singular_ratio_error on a zero denominator.
double estimate_ratio(const Vector& e_prev, const Vector& e_next, RatioMode mode);

// Estimate over a whole difference window. The newest consecutive pair of
// ratios that agree to ratio_tol wins (stable); when no pair agrees the most
// mutually consistent pair wins instead (not stable). The fallback matters on
// deflated layers, where contamination from the previous layer's estimate
// grows toward the window top and the clean plateau sits mid-window.
RatioEstimate estimate_ratio_window(const std::vector<Vector>& diffs, RatioMode mode,
                                    double ratio_tol);

// Geometric-series limit x_k + e_k / (1 - lambda1); valid for |lambda1| > 1 too.
// Throws singular_ratio_error when |1 - lambda1| <= singular_guard.
Vector extrapolate(const Vector& x_k, const Vector& e_k, double lambda1,
                   double singular_guard = 1e-8);

// Classical three-point form (x2*x0 - x1^2)/(x2 - 2 x1 + x0); exact on
// sequences L + c r^k for any r != 1. Throws singular_ratio_error when the
// denominator vanishes relative to the operand scale.
double aitken_delta_squared(double x0, double x1, double x2);

// Layered extrapolation: layers[0] is the raw window; each next layer removes
// the current dominant eigenvalue estimate via X'_k = X_k + E_k/(1 - lambda).
struct ExtrapolationTable {
    std::size_t order = 0;                   // layers actually built (may be < requested)
    std::vector<std::vector<Vector>> layers; // layers[i].size() = layers[0].size() - i
    std::vector<double> lambdas;             // per-layer estimates, deflation order
    std::vector<bool> stable;                // stability flag per estimate
    std::size_t window = 0;                  // raw iterates consumed
};

// Builds up to `order` layers from a raw iterate window (raw.size() >= order+2
// required). Stops early when a layer has < 3 points, the estimate goes
// non-finite, or |1 - lambda| <= singular_guard; the table's order reflects
// what was built. Requested order is capped at min(n, 6).
ExtrapolationTable build_table(const std::vector<Vector>& raw, std::size_t order,
                               RatioMode mode = RatioMode::signed_rayleigh(),
                               double ratio_tol = 1e-6, double singular_guard = 1e-8);

enum class SolveStatus { Converged, Stalled, SingularRatio, MaxItersReached };

struct SolveConfig {
    std::size_t window = 12;     // inner sweeps per outer iteration; must be >= order + 3
    std::size_t max_outer = 40;
    double tol = 1e-10;          // relative residual target
    double ratio_tol = 1e-6;
    double singular_guard = 1e-8;
    double blow_up_limit = 1e15;
};

struct SolveReport {
    Vector solution;
    std::size_t outer_iterations = 0;
    std::size_t inner_sweeps_total = 0;
    double final_residual = 0.0;
    std::vector<double> lambda_estimates;  // first outer iteration's per-layer estimates
    SolveStatus status = SolveStatus::MaxItersReached;
};

// Per-layer lambda and residual snapshot used for the extrapolation trace CSV.
struct SolveTraceRow {
    std::size_t outer = 0;
    std::size_t inner = 0;  // index within the window (sweep count or layer point index)
    int layer = -1;         // -1 = raw sweep row
    double lambda = 0.0;    // NaN on raw rows
    double residual_norm = 0.0;
};

// Safeguarded restart loop: run `window` sweeps (truncating the window before
// any non-finite or over-limit point), build the deflation table, then accept
// the residual-best finite point across all extrapolated layers if it improves
// on the window-start residual; otherwise fall back to the best raw iterate;
// otherwise count a stall. Two stalls in a row end the solve. The accepted
// point's residual never increases across outer iterations.
SolveReport solve_extrapolated(const LinearSystem& sys, const Vector& x0, IterationMethod method,
                               std::size_t order, const SolveConfig& cfg,
                               std::vector<SolveTraceRow>* trace = nullptr);

}  // namespace solver
