#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qsep/density_matrix.hpp"
#include "qsep/product_vector.hpp"
#include "qsep/rng.hpp"

namespace qsep {

enum class bell_kind { phi_plus, phi_minus, psi_plus, psi_minus };

// Bell vectors in the computational ordering (00, 01, 10, 11).
inline cvec make_bell(bell_kind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case bell_kind::phi_plus: return cvec{r, 0, 0, r};
        case bell_kind::phi_minus: return cvec{r, 0, 0, -r};
        case bell_kind::psi_plus: return cvec{0, r, r, 0};
        case bell_kind::psi_minus: return cvec{0, r, -r, 0};
    }
    throw error(errc::invalid_input, "unknown bell kind");
}

// Singlet fraction x on top of the maximally mixed background:
// x |psi-><psi-| + (1-x) I/4.
inline density_matrix make_werner(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw error(errc::invalid_input, "werner parameter must satisfy 0 <= x <= 1");
    cmat m = outer(make_bell(bell_kind::psi_minus));
    m *= cx{x, 0};
    cmat iso = cmat::identity(4);
    iso *= cx{(1.0 - x) / 4.0, 0};
    m += iso;
    return validate_density(m, 2, 2);
}

// Statistical mixture of product projectors. Weights must be nonnegative
// and sum to one.
inline density_matrix mixture(const std::vector<weighted_term>& terms,
                              const tolerance_config& tol = {}) {
    if (terms.empty()) throw error(errc::invalid_input, "mixture of zero terms");
    const int da = terms.front().state.dim_a();
    const int db = terms.front().state.dim_b();
    double wsum = 0;
    cmat m(da * db, da * db);
    for (const auto& t : terms) {
        if (t.weight < 0) throw error(errc::invalid_input, "mixture weights must be nonnegative");
        if (t.state.dim_a() != da || t.state.dim_b() != db)
            throw error(errc::invalid_input, "mixture terms have mismatched dimensions");
        wsum += t.weight;
        cmat p = t.state.projector();
        p *= cx{t.weight, 0};
        m += p;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw error(errc::invalid_input, "mixture weights sum to " + std::to_string(wsum));
    return validate_density(m, da, db, tol);
}

inline product_vector random_product_vector(rng& gen, int dim_a = 2, int dim_b = 2) {
    cvec e = gen.unit_vector(dim_a);
    cvec f = gen.unit_vector(dim_b);
    return product_vector(e, f);
}

inline product_vector random_product_vector(std::uint64_t seed, int dim_a = 2, int dim_b = 2) {
    rng gen(seed);
    return random_product_vector(gen, dim_a, dim_b);
}

// Mixture of k sphere-uniform product vectors with flat-Dirichlet weights.
inline density_matrix random_separable(rng& gen, int k, int dim_a = 2, int dim_b = 2) {
    if (k < 1 || k > 16) throw error(errc::invalid_input, "random_separable: k must be in [1,16]");
    std::vector<double> w(k);
    double sum = 0;
    for (int i = 0; i < k; ++i) {
        w[i] = -std::log(1.0 - gen.uniform());  // Exp(1)
        sum += w[i];
    }
    std::vector<weighted_term> terms;
    terms.reserve(k);
    for (int i = 0; i < k; ++i)
        terms.push_back({w[i] / sum, random_product_vector(gen, dim_a, dim_b)});
    return mixture(terms);
}

inline density_matrix random_separable(std::uint64_t seed, int k, int dim_a = 2, int dim_b = 2) {
    rng gen(seed);
    return random_separable(gen, k, dim_a, dim_b);
}

// Ginibre construction: G G^dag with G of shape d x rank, trace-normalized.
inline density_matrix random_density(rng& gen, int rank, int dim_a = 2, int dim_b = 2) {
    const int d = dim_a * dim_b;
    if (rank < 1 || rank > d)
        throw error(errc::invalid_input, "random_density: rank must be in [1," + std::to_string(d) + "]");
    cmat g(d, rank);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = gen.complex_gaussian();
    cmat m = g * g.adjoint();
    m *= cx{1.0 / m.trace().real(), 0};
    return validate_density(m, dim_a, dim_b);
}

inline density_matrix random_density(std::uint64_t seed, int rank, int dim_a = 2, int dim_b = 2) {
    rng gen(seed);
    return random_density(gen, rank, dim_a, dim_b);
}

}  // namespace qsep
