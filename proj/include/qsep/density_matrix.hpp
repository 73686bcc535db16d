#pragma once

#include <string>
#include <vector>

#include "qsep/complex_matrix.hpp"
#include "qsep/hermitian_eig.hpp"
#include "qsep/tolerances.hpp"

namespace qsep {

struct density_violation {
    errc code;
    std::string detail;
};

// A validated bipartite state: Hermitian, PSD, unit trace, on a 2x2 or 2x3
// system. Construct through validate_density.
class density_matrix {
  public:
    int dim_a() const { return dim_a_; }
    int dim_b() const { return dim_b_; }
    int dim() const { return dim_a_ * dim_b_; }
    const cmat& matrix() const { return mat_; }

    friend density_matrix validate_density(const cmat&, int, int, const tolerance_config&);

  private:
    density_matrix(cmat m, int da, int db) : mat_(std::move(m)), dim_a_(da), dim_b_(db) {}
    cmat mat_;
    int dim_a_, dim_b_;
};

// Every violated invariant, not just the first.
inline std::vector<density_violation> density_violations(const cmat& m, int dim_a, int dim_b,
                                                         const tolerance_config& tol = {}) {
    tol.check();
    std::vector<density_violation> out;
    if (dim_a != 2 || (dim_b != 2 && dim_b != 3)) {
        out.push_back({errc::unsupported_dimension,
                       "supported systems are 2x2 and 2x3, got " + std::to_string(dim_a) + "x" +
                           std::to_string(dim_b)});
        return out;
    }
    const int d = dim_a * dim_b;
    if (m.rows() != d || m.cols() != d) {
        out.push_back({errc::invalid_input, "matrix size " + std::to_string(m.rows()) + "x" +
                                                std::to_string(m.cols()) + " does not match dims"});
        return out;
    }
    if (!m.is_finite()) {
        out.push_back({errc::invalid_input, "non-finite entries"});
        return out;
    }

    double herm_res = max_abs_diff(m, m.adjoint());
    if (herm_res > tol.psd_tol)
        out.push_back({errc::not_hermitian,
                       "max |m - m^dag| = " + std::to_string(herm_res)});

    double tr_err = std::abs(m.trace() - cx{1, 0});
    if (tr_err > tol.psd_tol)
        out.push_back({errc::trace_not_one, "trace = " + std::to_string(m.trace().real()) +
                                                (m.trace().imag() != 0
                                                     ? " + " + std::to_string(m.trace().imag()) + "i"
                                                     : "")});

    eig_result e = herm_eig(hermitize(m));
    double psd_thr = tol.psd_tol * std::max(1.0, e.max_value());
    if (e.min_value() < -psd_thr)
        out.push_back({errc::not_positive,
                       "negative eigenvalue " + std::to_string(e.min_value())});
    return out;
}

inline density_matrix validate_density(const cmat& m, int dim_a, int dim_b,
                                       const tolerance_config& tol = {}) {
    auto violations = density_violations(m, dim_a, dim_b, tol);
    if (violations.size() == 1) throw error(violations[0].code, violations[0].detail);
    if (!violations.empty()) {
        std::string msg = std::to_string(violations.size()) + " violations: ";
        for (std::size_t i = 0; i < violations.size(); ++i) {
            if (i) msg += "; ";
            msg += std::string(errc_name(violations[i].code)) + " (" + violations[i].detail + ")";
        }
        throw error(violations.front().code, msg);
    }
    return density_matrix(hermitize(m), dim_a, dim_b);
}

// rho_a = Tr_b rho
inline cmat partial_trace_b(const density_matrix& rho) {
    const int da = rho.dim_a(), db = rho.dim_b();
    cmat out(da, da);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) {
            cx s{};
            for (int mu = 0; mu < db; ++mu) s += rho.matrix()(i * db + mu, j * db + mu);
            out(i, j) = s;
        }
    return out;
}

// rho_b = Tr_a rho
inline cmat partial_trace_a(const density_matrix& rho) {
    const int da = rho.dim_a(), db = rho.dim_b();
    cmat out(db, db);
    for (int mu = 0; mu < db; ++mu)
        for (int nu = 0; nu < db; ++nu) {
            cx s{};
            for (int i = 0; i < da; ++i) s += rho.matrix()(i * db + mu, i * db + nu);
            out(mu, nu) = s;
        }
    return out;
}

// True iff rho equals the tensor product of its own marginals.
inline bool is_product_state(const density_matrix& rho, const tolerance_config& tol = {}) {
    cmat prod = kron(partial_trace_b(rho), partial_trace_a(rho));
    return max_abs_diff(rho.matrix(), prod) <= tol.recon_tol;
}

namespace detail {

// -sum lambda ln lambda with 0 ln 0 = 0; eigenvalues clipped to [0,1] so
// that order 1e-15 negatives cannot poison the log.
inline double von_neumann_entropy(const cmat& m) {
    eig_result e = herm_eig(m);
    double s = 0;
    for (int k = 0; k < e.dim; ++k) {
        double lam = std::min(1.0, std::max(0.0, e.values[k]));
        if (lam > 0) s -= lam * std::log(lam);
    }
    return s;
}

}  // namespace detail

// I_c = S(rho_a) + S(rho_b) - S(rho), in nats; zero exactly on product states.
inline double index_of_correlation(const density_matrix& rho) {
    return detail::von_neumann_entropy(partial_trace_b(rho)) +
           detail::von_neumann_entropy(partial_trace_a(rho)) -
           detail::von_neumann_entropy(rho.matrix());
}

}  // namespace qsep
