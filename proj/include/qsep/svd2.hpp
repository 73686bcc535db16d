#pragma once

#include <algorithm>
#include <cmath>

#include "qsep/complex_matrix.hpp"
#include "qsep/hermitian_eig.hpp"

namespace qsep {

struct svd2_result {
    double s1 = 0, s2 = 0;  // s1 >= s2 >= 0
    cmat u{2, 2}, v{2, 2};  // m = u * diag(s1,s2) * v^dag
};

namespace detail {

inline int first_nonzero_index(const cvec& v, double tol = 1e-12) {
    for (int i = 0; i < v.dim(); ++i)
        if (std::abs(v[i]) > tol) return i;
    return -1;
}

}  // namespace detail

// SVD of a 2x2 complex matrix, built on the Hermitian eigensolver applied
// to m^dag m. Phases are fixed so the first nonzero entry of each U column
// is real nonnegative (V co-rotates, keeping m = U S V^dag exact).
inline svd2_result svd2(const cmat& m) {
    if (m.rows() != 2 || m.cols() != 2) throw error(errc::invalid_input, "svd2 expects a 2x2 matrix");
    if (!m.is_finite()) throw error(errc::invalid_input, "svd2: non-finite entries");

    eig_result e = herm_eig(m.adjoint() * m);  // eigenvalues ascending: s2^2, s1^2
    svd2_result out;
    out.v.set_col(0, e.vectors.col(1));
    out.v.set_col(1, e.vectors.col(0));

    // u0 along the dominant image direction, u1 its exact orthonormal
    // completion; s2 is then read off as <u1| m |v1> with the phase absorbed
    // into u1. Normalizing m*v1 directly would amplify rounding noise for
    // rank-deficient inputs.
    cvec w0 = m * out.v.col(0);
    out.s1 = w0.norm();
    cvec u0 = out.s1 > 1e-300 ? cx{1.0 / out.s1, 0.0} * w0 : cvec{1, 0};
    cvec u1{-std::conj(u0[1]), std::conj(u0[0])};
    cx overlap = dot(u1, m * out.v.col(1));
    out.s2 = std::abs(overlap);
    if (out.s2 > 1e-300) u1 *= overlap / out.s2;
    out.u.set_col(0, u0);
    out.u.set_col(1, u1);

    for (int j = 0; j < 2; ++j) {
        cvec uc = out.u.col(j);
        int idx = detail::first_nonzero_index(uc);
        if (idx < 0) continue;
        cx phase = uc[idx] / std::abs(uc[idx]);
        uc *= std::conj(phase);
        out.u.set_col(j, uc);
        cvec vc = out.v.col(j);
        vc *= std::conj(phase);
        out.v.set_col(j, vc);
    }
    return out;
}

}  // namespace qsep
