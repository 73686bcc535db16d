#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qsep/product_vector.hpp"
#include "qsep/quadratic_roots.hpp"
#include "qsep/rng.hpp"
#include "qsep/svd2.hpp"

namespace qsep {

// Coefficient matrix of a two-qubit ket: entry (i, mu) = psi[2i + mu].
// Rank one exactly on product vectors.
inline cmat reshape_to_2x2(const cvec& psi) {
    if (psi.dim() != 4) throw error(errc::invalid_input, "reshape_to_2x2 expects a 4-vector");
    cmat m(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int mu = 0; mu < 2; ++mu) m(i, mu) = psi[2 * i + mu];
    return m;
}

inline bool is_product_vector(const cvec& psi, double tol = 1e-10) {
    return std::abs(det2(reshape_to_2x2(psi.normalized()))) <= tol;
}

inline product_vector factorize_product(const cvec& psi, double tol = 1e-10) {
    cvec n = psi.normalized();
    cmat m = reshape_to_2x2(n);
    if (std::abs(det2(m)) > tol)
        throw error(errc::not_a_product_vector,
                    "|det| = " + std::to_string(std::abs(det2(m))) + " exceeds tolerance");
    svd2_result s = svd2(m);
    // m = s1 * u0 * v0^dag, so psi = u0 (x) conj(v0)
    return product_vector(s.u.col(0), s.v.col(0).conj());
}

// psi = c1 |e1,f1> + c2 |e2,f2| with c1 >= c2 >= 0 and orthonormal local pairs.
struct schmidt_form {
    double c1 = 0, c2 = 0;
    cvec e1{2}, f1{2}, e2{2}, f2{2};

    cvec reconstruct() const {
        cvec out = cx{c1, 0} * kron(e1, f1);
        out += cx{c2, 0} * kron(e2, f2);
        return out;
    }
};

inline schmidt_form schmidt(const cvec& psi) {
    if (psi.dim() != 4) throw error(errc::invalid_input, "schmidt expects a 4-vector");
    svd2_result s = svd2(reshape_to_2x2(psi));
    schmidt_form out;
    out.c1 = s.s1;
    out.c2 = s.s2;
    out.e1 = s.u.col(0);
    out.f1 = s.v.col(0).conj();
    out.e2 = s.u.col(1);
    out.f2 = s.v.col(1).conj();
    return out;
}

struct plane_root {
    cx alpha, beta;  // projective coefficients against (v1, v2)
    product_vector state;
};

// Product states inside span{v1, v2}: either the whole plane consists of
// product vectors, or exactly the listed roots do (one or two of them, and
// never zero).
struct plane_product_result {
    bool all_product = false;
    std::vector<plane_root> roots;
};

inline plane_product_result product_states_in_plane(const cvec& v1_in, const cvec& v2_in) {
    cvec v1 = v1_in.normalized();
    cvec v2 = v2_in.normalized();
    if (v1.dim() != 4 || v2.dim() != 4)
        throw error(errc::invalid_input, "product_states_in_plane expects 4-vectors");
    if (std::abs(dot(v1, v2)) >= 1.0 - 1e-12)
        throw error(errc::dependent_inputs, "spanning vectors are linearly dependent");

    cmat m1 = reshape_to_2x2(v1);
    cmat m2 = reshape_to_2x2(v2);
    // det(alpha m1 + beta m2) expanded as a homogeneous quadratic
    cx a = det2(m1);
    cx c = det2(m2);
    cx b = m1(0, 0) * m2(1, 1) + m2(0, 0) * m1(1, 1) - m1(0, 1) * m2(1, 0) - m2(0, 1) * m1(1, 0);

    plane_product_result out;
    // the spanning vectors are unit norm, so coefficients this small mean
    // the determinant vanishes identically on the plane up to rounding
    if (std::max({std::abs(a), std::abs(b), std::abs(c)}) <= 1e-12) {
        out.all_product = true;
        return out;
    }
    root_set rs = quadratic_roots(a, b, c);
    if (rs.kind == root_kind::all_solutions) {
        out.all_product = true;
        return out;
    }
    for (const projective_root& r : rs.roots) {
        cvec psi = r.alpha * v1 + r.beta * v2;
        out.roots.push_back({r.alpha, r.beta, factorize_product(psi, 1e-8)});
    }
    return out;
}

enum class plane_kind { p1, p2, p3 };

namespace detail {

inline void require_range(bool ok, const char* what) {
    if (!ok) throw error(errc::invalid_input, std::string("plane angle out of range: ") + what);
}

}  // namespace detail

// Canonical two-qubit planes used as test-case generators:
//   p1  span of two product vectors;
//   p2  plane with a single product state (the quadratic has a double root);
//   p3  generic plane spanned by an entangled pair.
// Angle ranges follow the canonical parameterization; draws whose plane
// fails the defining property of its kind are rejected. For p2 that forces
// B = 0: any B > 0 in the stated range puts a second product state into the
// plane, so those draws are rejected by the double-root check. When a seed
// is supplied the plane is conjugated by a Haar-random local unitary pair.
inline std::pair<cvec, cvec> gen_plane_case(plane_kind kind, double a, double b, double c, double d,
                                            std::optional<std::uint64_t> seed = std::nullopt) {
    const double pi = 3.141592653589793238462643383279502884;
    const double half_pi = pi / 2;
    cvec v1(4), v2(4);
    switch (kind) {
        case plane_kind::p1: {
            detail::require_range(a >= 0 && a <= half_pi, "0 <= A <= pi/2");
            detail::require_range(c >= 0 && c <= half_pi, "0 <= C <= pi/2");
            detail::require_range(b >= 0 && b < 2 * pi, "0 <= B < 2pi");
            detail::require_range(d >= 0 && d < 2 * pi, "0 <= D < 2pi");
            v1 = kron(cvec{1, 0}, cvec{1, 0});
            cvec ea{std::cos(a), std::polar(std::sin(a), b)};
            cvec fb{std::cos(c), std::polar(std::sin(c), d)};
            v2 = kron(ea, fb);
            break;
        }
        case plane_kind::p2: {
            detail::require_range(a > 0 && a < half_pi, "0 < A < pi/2");
            detail::require_range(b >= 0 && b < half_pi, "0 <= B < pi/2");
            detail::require_range(c >= 0 && c < 2 * pi, "0 <= C < 2pi");
            v1 = kron(cvec{1, 0}, cvec{1, 0});
            v2 = cvec{0, std::cos(a), std::polar(std::sin(a) * std::cos(b), c),
                      std::sin(a) * std::sin(b)};
            // single-product-state check: the plane quadratic must have a
            // double root, which the cross term sin(A)sin(B) spoils
            cx qa = det2(reshape_to_2x2(v1));
            cx qc = det2(reshape_to_2x2(v2));
            cmat m1 = reshape_to_2x2(v1), m2 = reshape_to_2x2(v2);
            cx qb = m1(0, 0) * m2(1, 1) + m2(0, 0) * m1(1, 1) - m1(0, 1) * m2(1, 0) -
                    m2(0, 1) * m1(1, 0);
            if (quadratic_roots(qa, qb, qc).kind != root_kind::one_double_root)
                throw error(errc::invalid_input,
                            "p2 plane with B > 0 contains a second product state; use B = 0");
            break;
        }
        case plane_kind::p3: {
            detail::require_range(a > 0 && a < half_pi, "0 < A < pi/2");
            detail::require_range(b >= 0 && b <= half_pi, "0 <= B <= pi/2");
            detail::require_range(c >= 0 && c <= half_pi, "0 <= C <= pi/2");
            detail::require_range(d >= 0 && d < 2 * pi, "0 <= D < 2pi");
            v1 = cvec{std::cos(a), 0, 0, std::sin(a)};
            v2 = cvec{std::sin(a) * std::cos(b), std::sin(b) * std::cos(c),
                      std::polar(std::sin(b) * std::sin(c), d), -std::cos(a) * std::cos(b)};
            if (is_product_vector(v2))
                throw error(errc::invalid_input,
                            "p3 second spanning vector degenerates to a product state");
            break;
        }
    }
    if (seed) {
        rng gen(*seed);
        cmat local = kron(gen.su2(), gen.su2());
        v1 = local * v1;
        v2 = local * v2;
    }
    return {v1.normalized(), v2.normalized()};
}

}  // namespace qsep
