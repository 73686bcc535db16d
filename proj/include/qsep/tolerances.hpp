#pragma once

#include "qsep/errors.hpp"

namespace qsep {

// Numerical tolerances shared across the library. psd_tol bounds how far
// below zero an eigenvalue may drift and still count as nonnegative,
// rank_tol separates zero from nonzero spectrum (both scaled internally by
// max(1, lambda_max)), recon_tol bounds reconstruction residuals in the
// max-abs-entry norm.
struct tolerance_config {
    double psd_tol = 1e-9;
    double rank_tol = 1e-9;
    double recon_tol = 1e-8;

    tolerance_config scaled(double factor) const {
        tolerance_config out = *this;
        out.psd_tol *= factor;
        out.rank_tol *= factor;
        out.recon_tol *= factor;
        return out;
    }

    void check() const {
        if (psd_tol <= 0 || rank_tol <= 0 || recon_tol <= 0)
            throw error(errc::invalid_input, "tolerances must be positive");
    }
};

}  // namespace qsep
