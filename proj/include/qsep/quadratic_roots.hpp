#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qsep/complex_matrix.hpp"

namespace qsep {

// A point [alpha : beta] of the complex projective line, normalized so the
// larger-magnitude component equals 1 exactly.
struct projective_root {
    cx alpha, beta;

    static projective_root normalized(cx a, cx b) {
        if (std::abs(a) >= std::abs(b)) return {cx{1, 0}, b / a};
        return {a / b, cx{1, 0}};
    }
};

enum class root_kind { two_roots, one_double_root, all_solutions };

// Solutions of a*alpha^2 + b*alpha*beta + c*beta^2 = 0 on the projective line.
struct root_set {
    root_kind kind;
    std::vector<projective_root> roots;  // 2, 1 or 0 entries respectively
};

// Near-zero coefficients are those below 1e-12 times the largest magnitude.
inline root_set quadratic_roots(cx a, cx b, cx c) {
    const double m = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (m == 0.0) return {root_kind::all_solutions, {}};
    const double zero_tol = 1e-12 * m;
    const bool a0 = std::abs(a) <= zero_tol;
    const bool b0 = std::abs(b) <= zero_tol;
    const bool c0 = std::abs(c) <= zero_tol;

    auto sorted = [](std::vector<projective_root> r) {
        std::sort(r.begin(), r.end(), [](const projective_root& x, const projective_root& y) {
            if (x.alpha.real() != y.alpha.real()) return x.alpha.real() < y.alpha.real();
            if (x.alpha.imag() != y.alpha.imag()) return x.alpha.imag() < y.alpha.imag();
            if (x.beta.real() != y.beta.real()) return x.beta.real() < y.beta.real();
            return x.beta.imag() < y.beta.imag();
        });
        return r;
    };

    if (a0 && b0 && c0) return {root_kind::all_solutions, {}};

    if (a0) {
        // beta * (b*alpha + c*beta) = 0
        if (b0) return {root_kind::one_double_root, {projective_root::normalized(1, 0)}};
        return {root_kind::two_roots,
                sorted({projective_root::normalized(1, 0), projective_root::normalized(-c, b)})};
    }
    if (c0) {
        // alpha * (a*alpha + b*beta) = 0
        if (b0) return {root_kind::one_double_root, {projective_root::normalized(0, 1)}};
        return {root_kind::two_roots,
                sorted({projective_root::normalized(0, 1), projective_root::normalized(-b, a)})};
    }

    const cx disc = b * b - 4.0 * a * c;
    if (std::abs(disc) <= 1e-10 * m * m)
        return {root_kind::one_double_root, {projective_root::normalized(-b, 2.0 * a)}};

    cx sq = std::sqrt(disc);
    if ((std::conj(b) * sq).real() < 0) sq = -sq;  // avoid cancellation in b + sq
    const cx q = -0.5 * (b + sq);
    return {root_kind::two_roots,
            sorted({projective_root::normalized(q, a), projective_root::normalized(c, q)})};
}

}  // namespace qsep
