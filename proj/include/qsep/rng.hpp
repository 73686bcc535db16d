#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qsep/complex_matrix.hpp"

namespace qsep {

// Seeded generator with hand-rolled distributions. mt19937_64 output is
// fixed by the standard and the transformations below avoid the
// implementation-defined std::*_distribution adapters, so a seed pins the
// byte-exact stream on a given platform.
class rng {
  public:
    explicit rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // derive a seed for a subordinate generator
    std::uint64_t next_seed() { return gen_(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * pi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    cx complex_gaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }

    // Haar-uniform unit vector
    cvec unit_vector(int dim) {
        cvec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = complex_gaussian();
        return v.normalized();
    }

    // Haar-random SU(2) element
    cmat su2() {
        cvec z = unit_vector(2);
        cmat u(2, 2);
        u(0, 0) = z[0];
        u(1, 0) = z[1];
        u(0, 1) = -std::conj(z[1]);
        u(1, 1) = std::conj(z[0]);
        return u;
    }

  private:
    static constexpr double pi = 3.141592653589793238462643383279502884;
    std::mt19937_64 gen_;
    double spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace qsep
