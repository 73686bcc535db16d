#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "qsep/complex_matrix.hpp"

namespace qsep {

struct eig_result {
    std::array<double, max_dim> values{};  // ascending, first dim() entries valid
    cmat vectors;                          // column k pairs with values[k]; unitary
    int dim;

    double min_value() const { return values[0]; }
    double max_value() const { return values[dim - 1]; }
};

namespace detail {

// Rotate the vector so its largest-magnitude component is real positive.
// Keeps eigenvector output reproducible across degenerate subspaces.
inline void fix_column_phase(cmat& m, int col) {
    int best = 0;
    double best_mag = 0;
    for (int i = 0; i < m.rows(); ++i) {
        double mag = std::abs(m(i, col));
        if (mag > best_mag) best_mag = mag, best = i;
    }
    if (best_mag < 1e-300) return;
    cx phase = m(best, col) / best_mag;
    for (int i = 0; i < m.rows(); ++i) m(i, col) *= std::conj(phase);
}

inline bool column_less(const cmat& m, int a, int b) {
    for (int i = 0; i < m.rows(); ++i) {
        cx x = m(i, a), y = m(i, b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

}  // namespace detail

// Full spectrum of a Hermitian matrix by cyclic complex Jacobi rotations.
// The input is symmetrized first; at these sizes the quadratically
// convergent sweeps reach machine precision in under a dozen passes.
inline eig_result herm_eig(const cmat& m_in) {
    if (m_in.rows() != m_in.cols())
        throw error(errc::invalid_input, "herm_eig expects a square matrix");
    if (!m_in.is_finite())
        throw error(errc::invalid_input, "herm_eig: non-finite entries");

    const int n = m_in.rows();
    cmat a = hermitize(m_in);
    cmat v = cmat::identity(n);

    double scale = std::max(1.0, a.max_abs());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-15 * scale) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;

                // Unitary 2x2 rotation diag(U^dag [app apq; apq* aqq] U).
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cx u = apq / mag;  // e^{i arg(apq)}
                const double theta = (aqq - app) / (2 * mag);
                double t;  // tan of the rotation angle, smaller root of t^2 - 2*theta*t - 1 = 0
                if (theta >= 0)
                    t = -1.0 / (theta + std::sqrt(theta * theta + 1));
                else
                    t = 1.0 / (-theta + std::sqrt(theta * theta + 1));
                const double c = 1.0 / std::sqrt(t * t + 1);
                const double s = t * c;

                // Columns: col_p' = c*col_p + s*conj(u)*col_q ; col_q' = -s*u*col_p + c*col_q
                for (int k = 0; k < n; ++k) {
                    cx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + s * std::conj(u) * akq;
                    a(k, q) = -s * u * akp + c * akq;
                    cx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + s * std::conj(u) * vkq;
                    v(k, q) = -s * u * vkp + c * vkq;
                }
                // Rows (the adjoint rotation): row_p' = c*row_p + s*u*row_q ; row_q' = -s*conj(u)*row_p + c*row_q
                for (int k = 0; k < n; ++k) {
                    cx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + s * u * aqk;
                    a(q, k) = -s * std::conj(u) * apk + c * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
            }
        }
    }

    eig_result out{.values = {}, .vectors = cmat(n, n), .dim = n};
    std::array<int, max_dim> order{};
    for (int i = 0; i < n; ++i) order[i] = i;

    cmat phased = v;
    for (int j = 0; j < n; ++j) detail::fix_column_phase(phased, j);

    std::sort(order.begin(), order.begin() + n, [&](int i, int j) {
        double li = a(i, i).real(), lj = a(j, j).real();
        if (li != lj) return li < lj;
        return detail::column_less(phased, i, j);
    });

    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        out.vectors.set_col(k, phased.col(order[k]));
    }
    return out;
}

// Number of eigenvalues above rank_tol * max(1, lambda_max).
inline int rank_with_tol(const cmat& m, double rank_tol) {
    if (rank_tol <= 0) throw error(errc::invalid_input, "rank_with_tol: tolerance must be positive");
    eig_result e = herm_eig(m);
    double thr = rank_tol * std::max(1.0, e.max_value());
    int r = 0;
    for (int k = 0; k < e.dim; ++k)
        if (e.values[k] > thr) ++r;
    return r;
}

// Moore-Penrose pseudoinverse of a Hermitian PSD matrix by spectral
// inversion of the eigenvalues above the rank threshold.
inline cmat pinv_psd(const cmat& m, double rank_tol) {
    eig_result e = herm_eig(m);
    double thr = rank_tol * std::max(1.0, e.max_value());
    cmat out(e.dim, e.dim);
    for (int k = 0; k < e.dim; ++k) {
        if (e.values[k] <= thr) continue;
        cvec vk = e.vectors.col(k);
        cmat p = outer(vk);
        p *= cx{1.0 / e.values[k], 0.0};
        out += p;
    }
    return out;
}

// Projector onto the span of eigenvectors above the rank threshold.
inline cmat range_projector(const eig_result& e, double rank_tol) {
    double thr = rank_tol * std::max(1.0, e.max_value());
    cmat out(e.dim, e.dim);
    for (int k = 0; k < e.dim; ++k) {
        if (e.values[k] <= thr) continue;
        out += outer(e.vectors.col(k));
    }
    return out;
}

inline cmat range_projector(const cmat& m, double rank_tol) {
    return range_projector(herm_eig(m), rank_tol);
}

// || (I - P_range) v ||, the out-of-range component of v.
inline double range_residual(const eig_result& e, const cvec& v, double rank_tol) {
    double thr = rank_tol * std::max(1.0, e.max_value());
    double res_sq = 0;
    for (int k = 0; k < e.dim; ++k) {
        if (e.values[k] > thr) continue;
        res_sq += std::norm(dot(e.vectors.col(k), v));
    }
    return std::sqrt(res_sq);
}

}  // namespace qsep
