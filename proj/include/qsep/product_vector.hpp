#pragma once

#include <utility>
#include <vector>

#include "qsep/complex_matrix.hpp"

namespace qsep {

namespace detail {

// Multiply v by a phase making its first non-negligible component real
// positive; returns the phase that was removed.
inline cx canonicalize_phase(cvec& v) {
    for (int i = 0; i < v.dim(); ++i) {
        double mag = std::abs(v[i]);
        if (mag > 1e-12) {
            cx phase = v[i] / mag;
            v *= std::conj(phase);
            return phase;
        }
    }
    return cx{1, 0};
}

}  // namespace detail

// A pure product ket |e> (x) |f|, stored as the two local factors. Both are
// unit vectors; phases are fixed (first nonzero component real nonnegative
// on each side, the joint rotation showing up only as a global phase of the
// combined ket), so equal states compare equal entrywise.
class product_vector {
  public:
    product_vector(const cvec& e, const cvec& f) : e_(e.normalized()), f_(f.normalized()) {
        cx fphase = detail::canonicalize_phase(f_);
        e_ *= fphase;  // keep e (x) f fixed while f is rotated
        detail::canonicalize_phase(e_);
    }

    const cvec& e() const { return e_; }
    const cvec& f() const { return f_; }
    int dim_a() const { return e_.dim(); }
    int dim_b() const { return f_.dim(); }

    // |e,f> in the flat computational basis, index i*dim_b + mu
    cvec combined() const { return kron(e_, f_); }

    cmat projector() const { return outer(combined()); }

    // |e, f*>, the partner appearing on the partially transposed side
    product_vector conjugated_b() const { return product_vector(e_, f_.conj()); }

  private:
    cvec e_, f_;
};

struct weighted_term {
    double weight;
    product_vector state;
};

// An (in general signed) combination  sum_i w_i |e_i,f_i><e_i,f_i|.
// Statistical mixtures have all weights positive; one or two negative
// weights are the signature of an inseparable source state.
class weighted_decomposition {
  public:
    weighted_decomposition(int dim_a, int dim_b) : dim_a_(dim_a), dim_b_(dim_b) {}

    void add(double weight, product_vector state) {
        terms_.push_back({weight, std::move(state)});
    }

    const std::vector<weighted_term>& terms() const { return terms_; }
    int size() const { return static_cast<int>(terms_.size()); }
    int dim_a() const { return dim_a_; }
    int dim_b() const { return dim_b_; }

    double weight_sum() const {
        double s = 0;
        for (const auto& t : terms_) s += t.weight;
        return s;
    }

    int negative_count() const {
        int n = 0;
        for (const auto& t : terms_)
            if (t.weight < 0) ++n;
        return n;
    }

    bool statistical() const { return negative_count() == 0; }

    cmat reconstruct() const {
        cmat out(dim_a_ * dim_b_, dim_a_ * dim_b_);
        for (const auto& t : terms_) {
            cmat p = t.state.projector();
            p *= cx{t.weight, 0};
            out += p;
        }
        return out;
    }

  private:
    int dim_a_, dim_b_;
    std::vector<weighted_term> terms_;
};

}  // namespace qsep
