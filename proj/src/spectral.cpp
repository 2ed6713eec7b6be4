#include "solver/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace solver {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Householder reduction to upper Hessenberg form, similarity-preserving.
void hessenberg(DenseMatrix& h) {
    const std::size_t n = h.n_rows;
    if (n < 3) return;
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm += h.at(i, k) * h.at(i, k);
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        const double x0 = h.at(k + 1, k);
        const double alpha = x0 >= 0.0 ? -xnorm : xnorm;
        double vnorm2 = 0.0;
        v[k + 1] = x0 - alpha;
        vnorm2 += v[k + 1] * v[k + 1];
        for (std::size_t i = k + 2; i < n; ++i) {
            v[i] = h.at(i, k);
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        // rows k+1..n-1: H := (I - beta v v^T) H
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * h.at(i, j);
            s *= beta;
            for (std::size_t i = k + 1; i < n; ++i) h.at(i, j) -= s * v[i];
        }
        // cols k+1..n-1: H := H (I - beta v v^T)
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += h.at(i, j) * v[j];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) h.at(i, j) -= s * v[j];
        }
        for (std::size_t i = k + 2; i < n; ++i) h.at(i, k) = 0.0;
    }
}

// Eigenvalues of a real 2x2 block; complex pairs get +-im.
void block2_eigs(double a, double b, double c, double d,
                 std::vector<std::complex<double>>& out) {
    const double tr2 = 0.5 * (a + d);
    const double disc = 0.25 * (a - d) * (a - d) + b * c;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        out.emplace_back(tr2 + s, 0.0);
        out.emplace_back(tr2 - s, 0.0);
    } else {
        const double s = std::sqrt(-disc);
        out.emplace_back(tr2, s);
        out.emplace_back(tr2, -s);
    }
}
}  // namespace

SpectralReport eigenvalues_qr(const DenseMatrix& m, double tol, std::size_t max_sweeps) {
    if (!m.square()) throw invariant_error("eigensolver requires a square matrix");
    const std::size_t n = m.n_rows;
    if (n == 0) throw invariant_error("eigensolver requires a nonempty matrix");
    if (n > 64) throw invariant_error("eigensolver is desk-scale: n must be <= 64");
    if (!(tol > 0.0)) throw invariant_error("eigensolver tolerance must be positive");
    if (max_sweeps == 0) max_sweeps = 100 * n;

    DenseMatrix h = m;
    hessenberg(h);

    SpectralReport rep;
    auto& eigs = rep.eigenvalues;
    eigs.reserve(n);

    std::size_t hi = n - 1;
    std::size_t since_deflate = 0;
    while (eigs.size() < n) {
        // zero out negligible subdiagonals
        for (std::size_t k = 1; k <= hi; ++k) {
            const double scale = std::abs(h.at(k - 1, k - 1)) + std::abs(h.at(k, k));
            if (std::abs(h.at(k, k - 1)) <= tol * std::max(scale, 1e-300))
                h.at(k, k - 1) = 0.0;
        }
        // peel converged 1x1 / 2x2 trailing blocks
        bool peeled = true;
        while (peeled && eigs.size() < n) {
            peeled = false;
            if (hi == 0) {
                eigs.emplace_back(h.at(0, 0), 0.0);
                break;
            }
            if (h.at(hi, hi - 1) == 0.0) {
                eigs.emplace_back(h.at(hi, hi), 0.0);
                --hi;
                since_deflate = 0;
                peeled = true;
            } else if (hi == 1 || h.at(hi - 1, hi - 2) == 0.0) {
                block2_eigs(h.at(hi - 1, hi - 1), h.at(hi - 1, hi), h.at(hi, hi - 1),
                            h.at(hi, hi), eigs);
                if (hi == 1) break;  // whole matrix consumed
                hi -= 2;
                since_deflate = 0;
                peeled = true;
            }
        }
        if (eigs.size() >= n) break;

        // active unreduced block [lo, hi]
        std::size_t lo = hi;
        while (lo > 0 && h.at(lo, lo - 1) != 0.0) --lo;

        if (rep.iterations_used >= max_sweeps)
            throw eigensolver_error("QR iteration did not converge within the sweep budget");
        ++rep.iterations_used;
        ++since_deflate;

        // Francis double-shift from the trailing 2x2; exceptional shift when stuck.
        double s = h.at(hi - 1, hi - 1) + h.at(hi, hi);
        double t = h.at(hi - 1, hi - 1) * h.at(hi, hi) - h.at(hi - 1, hi) * h.at(hi, hi - 1);
        if (since_deflate % 11 == 10) {
            const double w = std::abs(h.at(hi, hi - 1)) + std::abs(h.at(hi - 1, hi - 2));
            s = 1.5 * w;
            t = w * w;
        }
        double x = h.at(lo, lo) * h.at(lo, lo) + h.at(lo, lo + 1) * h.at(lo + 1, lo) -
                   s * h.at(lo, lo) + t;
        double y = h.at(lo + 1, lo) * (h.at(lo, lo) + h.at(lo + 1, lo + 1) - s);
        double z = hi >= lo + 2 ? h.at(lo + 1, lo) * h.at(lo + 2, lo + 1) : 0.0;

        for (std::size_t k = lo; k <= hi - 2; ++k) {
            // Householder on (x, y, z)
            const double nrm = std::sqrt(x * x + y * y + z * z);
            if (nrm != 0.0) {
                const double alpha = x >= 0.0 ? -nrm : nrm;
                double v0 = x - alpha, v1 = y, v2 = z;
                const double vn2 = v0 * v0 + v1 * v1 + v2 * v2;
                if (vn2 != 0.0) {
                    const double beta = 2.0 / vn2;
                    const std::size_t rend = std::min(hi, k + 3);
                    for (std::size_t j = (k > lo ? k - 1 : lo); j <= hi; ++j) {
                        const double s1 = beta * (v0 * h.at(k, j) + v1 * h.at(k + 1, j) +
                                                  v2 * h.at(k + 2, j));
                        h.at(k, j) -= s1 * v0;
                        h.at(k + 1, j) -= s1 * v1;
                        h.at(k + 2, j) -= s1 * v2;
                    }
                    for (std::size_t i = lo; i <= rend; ++i) {
                        const double s1 = beta * (v0 * h.at(i, k) + v1 * h.at(i, k + 1) +
                                                  v2 * h.at(i, k + 2));
                        h.at(i, k) -= s1 * v0;
                        h.at(i, k + 1) -= s1 * v1;
                        h.at(i, k + 2) -= s1 * v2;
                    }
                }
            }
            // the reflector was built to annihilate these; make the zeros exact
            if (k > lo) {
                h.at(k + 1, k - 1) = 0.0;
                h.at(k + 2, k - 1) = 0.0;
            }
            x = h.at(k + 1, k);
            y = h.at(k + 2, k);
            z = k + 3 <= hi ? h.at(k + 3, k) : 0.0;
        }
        // final 2-element reflector on (x, y) at column hi-2
        {
            const std::size_t k = hi - 1;
            const double nrm = std::sqrt(x * x + y * y);
            if (nrm != 0.0) {
                const double alpha = x >= 0.0 ? -nrm : nrm;
                double v0 = x - alpha, v1 = y;
                const double vn2 = v0 * v0 + v1 * v1;
                if (vn2 != 0.0) {
                    const double beta = 2.0 / vn2;
                    for (std::size_t j = k - 1; j <= hi; ++j) {
                        const double s1 = beta * (v0 * h.at(k, j) + v1 * h.at(k + 1, j));
                        h.at(k, j) -= s1 * v0;
                        h.at(k + 1, j) -= s1 * v1;
                    }
                    for (std::size_t i = lo; i <= hi; ++i) {
                        const double s1 = beta * (v0 * h.at(i, k) + v1 * h.at(i, k + 1));
                        h.at(i, k) -= s1 * v0;
                        h.at(i, k + 1) -= s1 * v1;
                    }
                }
            }
            h.at(hi, hi - 2) = 0.0;  // annihilated by the reflector; make it exact
        }
    }

    std::stable_sort(eigs.begin(), eigs.end(),
                     [](const std::complex<double>& a, const std::complex<double>& b) {
                         const double ma = std::abs(a), mb = std::abs(b);
                         if (ma != mb) return ma > mb;
                         if (a.real() != b.real()) return a.real() > b.real();
                         return a.imag() > b.imag();
                     });
    rep.dominant_modulus = eigs.empty() ? 0.0 : std::abs(eigs[0]);
    rep.dominant_is_real = eigs.empty() || eigs[0].imag() == 0.0;
    return rep;
}

Vector lu_solve(const DenseMatrix& a, const Vector& rhs) {
    if (!a.square() || a.n_rows != rhs.size()) throw invariant_error("lu_solve dimension mismatch");
    const std::size_t n = a.n_rows;
    DenseMatrix lu = a;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double pmax = std::abs(lu.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu.at(i, k)) > pmax) {
                pmax = std::abs(lu.at(i, k));
                piv = i;
            }
        if (pmax == 0.0) throw singular_matrix_error("matrix is singular to working precision");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu.at(k, j), lu.at(piv, j));
            std::swap(perm[k], perm[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            lu.at(i, k) /= lu.at(k, k);
            const double f = lu.at(i, k);
            for (std::size_t j = k + 1; j < n; ++j) lu.at(i, j) -= f * lu.at(k, j);
        }
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu.at(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lu.at(ii, j) * x[j];
        x[ii] = s / lu.at(ii, ii);
    }
    return x;
}

Vector exact_fixed_point(const DenseMatrix& m, const Vector& x_k, const Vector& e_k) {
    if (!m.square() || m.n_rows != x_k.size() || x_k.size() != e_k.size())
        throw invariant_error("exact_fixed_point dimension mismatch");
    const std::size_t n = m.n_rows;
    DenseMatrix imm(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            imm.at(i, j) = (i == j ? 1.0 : 0.0) - m.at(i, j);
    Vector y = lu_solve(imm, e_k);
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x_k[i] + y[i];
    return out;
}

std::vector<double> ratio_series(const IterationTrace& trace, RatioMode mode) {
    if (trace.iterates.size() < 3)
        throw invariant_error("ratio_series needs at least 3 iterates");
    std::vector<double> out;
    out.reserve(trace.differences.size() - 1);
    for (std::size_t k = 0; k + 1 < trace.differences.size(); ++k) {
        try {
            out.push_back(estimate_ratio(trace.differences[k], trace.differences[k + 1], mode));
        } catch (const singular_ratio_error&) {
            out.push_back(kNaN);
        }
    }
    return out;
}

}  // namespace solver
