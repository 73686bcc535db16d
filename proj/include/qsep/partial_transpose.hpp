#pragma once

#include <optional>
#include <vector>

#include "qsep/density_matrix.hpp"
#include "qsep/hermitian_eig.hpp"

namespace qsep {

// Transpose on the B factor only: entry (i mu, j nu) <- (i nu, j mu).
// A pure index permutation, hence an exact involution.
inline cmat partial_transpose_b(const cmat& m, int dim_a, int dim_b) {
    const int d = dim_a * dim_b;
    if (m.rows() != d || m.cols() != d)
        throw error(errc::invalid_input, "partial_transpose_b: size does not match dims");
    cmat out(d, d);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_a; ++j)
            for (int mu = 0; mu < dim_b; ++mu)
                for (int nu = 0; nu < dim_b; ++nu)
                    out(i * dim_b + mu, j * dim_b + nu) = m(i * dim_b + nu, j * dim_b + mu);
    return out;
}

inline cmat partial_transpose_a(const cmat& m, int dim_a, int dim_b) {
    const int d = dim_a * dim_b;
    if (m.rows() != d || m.cols() != d)
        throw error(errc::invalid_input, "partial_transpose_a: size does not match dims");
    cmat out(d, d);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_a; ++j)
            for (int mu = 0; mu < dim_b; ++mu)
                for (int nu = 0; nu < dim_b; ++nu)
                    out(i * dim_b + mu, j * dim_b + nu) = m(j * dim_b + mu, i * dim_b + nu);
    return out;
}

inline cmat partial_transpose_b(const density_matrix& rho) {
    return partial_transpose_b(rho.matrix(), rho.dim_a(), rho.dim_b());
}

inline cmat partial_transpose_a(const density_matrix& rho) {
    return partial_transpose_a(rho.matrix(), rho.dim_a(), rho.dim_b());
}

enum class verdict_kind { separable, inseparable, ppt_inconclusive };

inline const char* verdict_name(verdict_kind v) {
    switch (v) {
        case verdict_kind::separable: return "separable";
        case verdict_kind::inseparable: return "inseparable";
        case verdict_kind::ppt_inconclusive: return "ppt_inconclusive";
    }
    return "unknown";
}

struct separability_verdict {
    bool ppt_holds = false;
    verdict_kind verdict = verdict_kind::ppt_inconclusive;
    double min_pt_eigenvalue = 0;
    int negative_count = 0;
    std::optional<cvec> negative_eigenvector;  // eigenvector of the minimal eigenvalue
    std::vector<double> pt_spectrum;           // ascending
    // min eigenvalue in [-psd_tol, 0): nonnegative only up to the noise floor
    bool boundary = false;
};

// For the 2x2 and 2x3 systems this library admits, positivity of the
// partial transpose decides separability outright; the verdict enum keeps
// the inconclusive branch for documentation of the general contract.
inline separability_verdict ppt_check(const density_matrix& rho, const tolerance_config& tol = {}) {
    tol.check();
    eig_result e = herm_eig(partial_transpose_b(rho));
    separability_verdict out;
    out.min_pt_eigenvalue = e.min_value();
    out.pt_spectrum.assign(e.values.begin(), e.values.begin() + e.dim);
    const double thr = tol.psd_tol * std::max(1.0, e.max_value());
    for (double v : out.pt_spectrum)
        if (v < -thr) ++out.negative_count;
    out.ppt_holds = e.min_value() >= -thr;
    out.boundary = out.ppt_holds && e.min_value() < 0;
    out.verdict = out.ppt_holds ? verdict_kind::separable : verdict_kind::inseparable;
    if (out.negative_count >= 1) out.negative_eigenvector = e.vectors.col(0);
    return out;
}

namespace detail {

inline const cmat& pauli(int k) {
    static const cmat sigma[4] = {
        cmat::identity(2),
        cmat{{0, 1}, {1, 0}},
        cmat{{0, cx{0, -1}}, {cx{0, 1}, 0}},
        cmat{{1, 0}, {0, -1}},
    };
    return sigma[k];
}

}  // namespace detail

// Local time reversal on the B side, computed through the Hermitian
// product-operator basis: expand rho = sum r_kl sigma_k (x) sigma_l,
// conjugate the B-side basis elements (only sigma_y flips sign), and
// reassemble. Independent of the index-permutation partial transpose,
// to which it is equal for every state.
inline cmat local_time_reversal(const density_matrix& rho) {
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw error(errc::unsupported_dimension, "local_time_reversal is defined for 2x2 systems");
    cmat out(4, 4);
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            cmat basis = kron(detail::pauli(k), detail::pauli(l));
            double r = (basis * rho.matrix()).trace().real() / 4.0;
            if (l == 2) r = -r;  // sigma_y* = -sigma_y
            basis *= cx{r, 0};
            out += basis;
        }
    }
    return out;
}

struct negative_spectrum {
    int count = 0;            // PT eigenvalues below -psd_tol
    double lambda_min = 0;
    std::optional<cvec> eigenvector;  // present iff count == 1
};

// Negative part of the PT spectrum of a 2x2 state. Valid states carry at
// most one negative eigenvalue; two or more signals numerically corrupt
// input and is rejected.
inline negative_spectrum negative_pt_spectrum(const density_matrix& rho,
                                              const tolerance_config& tol = {}) {
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw error(errc::unsupported_dimension, "negative_pt_spectrum is defined for 2x2 systems");
    eig_result e = herm_eig(partial_transpose_b(rho));
    const double thr = tol.psd_tol * std::max(1.0, e.max_value());
    negative_spectrum out;
    out.lambda_min = e.min_value();
    for (int k = 0; k < e.dim; ++k)
        if (e.values[k] < -thr) ++out.count;
    if (out.count >= 2)
        throw error(errc::inconsistent_state,
                    "partial transpose has " + std::to_string(out.count) +
                        " negative eigenvalues; a valid two-qubit state admits at most one");
    if (out.count == 1) out.eigenvector = e.vectors.col(0);
    return out;
}

}  // namespace qsep
