#include <catch2/catch_amalgamated.hpp>

#include "qsep/partial_transpose.hpp"
#include "qsep/states.hpp"

using namespace qsep;

namespace {

density_matrix random_state(rng& gen, int trial) {
    return random_density(gen, 1 + trial % 4);
}

}  // namespace

TEST_CASE("partial transpose on product states") {
    rng gen(21);
    for (int trial = 0; trial < 50; ++trial) {
        cmat ga(2, 2), gb(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) ga(i, j) = gen.complex_gaussian(), gb(i, j) = gen.complex_gaussian();
        cmat ra = ga * ga.adjoint();
        ra *= cx{1.0 / ra.trace().real(), 0};
        cmat rb = gb * gb.adjoint();
        rb *= cx{1.0 / rb.trace().real(), 0};
        density_matrix rho = validate_density(kron(ra, rb), 2, 2);

        cmat pt = partial_transpose_b(rho);
        CHECK(max_abs_diff(pt, kron(ra, rb.transpose())) < 1e-14);
        // transposing one factor preserves the spectrum
        eig_result before = herm_eig(rho.matrix());
        eig_result after = herm_eig(pt);
        for (int k = 0; k < 4; ++k) CHECK(after.values[k] == Catch::Approx(before.values[k]).margin(1e-12));
        CHECK(after.min_value() > -1e-12);
    }
}

TEST_CASE("partial transpose fixed spectra") {
    SECTION("bell projector") {
        density_matrix rho = validate_density(outer(make_bell(bell_kind::phi_plus)), 2, 2);
        eig_result e = herm_eig(partial_transpose_b(rho));
        CHECK(e.values[0] == Catch::Approx(-0.5));
        CHECK(e.values[1] == Catch::Approx(0.5));
        CHECK(e.values[2] == Catch::Approx(0.5));
        CHECK(e.values[3] == Catch::Approx(0.5));
    }
    SECTION("werner minimum eigenvalue is (1-3x)/4") {
        for (double x = 0.0; x <= 1.0; x += 0.05) {
            eig_result e = herm_eig(partial_transpose_b(make_werner(x)));
            CHECK(e.min_value() == Catch::Approx((1 - 3 * x) / 4).margin(1e-12));
        }
    }
    SECTION("transpose rank drops to 3 at the separability boundary") {
        CHECK(rank_with_tol(partial_transpose_b(make_werner(1.0 / 3.0)), 1e-9) == 3);
    }
}

TEST_CASE("partial transpose structural identities") {
    rng gen(22);
    for (int trial = 0; trial < 200; ++trial) {
        density_matrix rho = random_state(gen, trial);
        cmat pt = partial_transpose_b(rho);
        // exact involution: a pure index permutation applied twice
        CHECK(max_abs_diff(partial_transpose_b(pt, 2, 2), rho.matrix()) == 0.0);
        // transpose-on-A equals the entrywise conjugate of transpose-on-B
        CHECK(max_abs_diff(partial_transpose_a(rho), pt.conj()) == 0.0);
        // trace preserved exactly
        CHECK(std::abs(pt.trace() - rho.matrix().trace()) <= 1e-14);
    }
}

TEST_CASE("ppt_check verdicts") {
    SECTION("werner thresholds") {
        CHECK(ppt_check(make_werner(0.3)).verdict == verdict_kind::separable);
        CHECK(ppt_check(make_werner(0.5)).verdict == verdict_kind::inseparable);
    }
    SECTION("maximally mixed") {
        cmat m = cmat::identity(4);
        m *= cx{0.25, 0};
        separability_verdict v = ppt_check(validate_density(m, 2, 2));
        CHECK(v.verdict == verdict_kind::separable);
        CHECK(v.negative_count == 0);
        CHECK_FALSE(v.negative_eigenvector.has_value());
        CHECK(v.pt_spectrum.size() == 4);
    }
    SECTION("noise-floor negatives are separable with the boundary flag") {
        // minimum PT eigenvalue sits in (-psd_tol, 0)
        separability_verdict v = ppt_check(make_werner(1.0 / 3.0 + 1e-10));
        CHECK(v.verdict == verdict_kind::separable);
        CHECK(v.boundary);
        CHECK(v.min_pt_eigenvalue < 0);
    }
    SECTION("negative eigenvector reported for NPT states") {
        separability_verdict v = ppt_check(make_werner(0.9));
        CHECK(v.negative_count == 1);
        REQUIRE(v.negative_eigenvector.has_value());
        cvec n = *v.negative_eigenvector;
        cvec r = partial_transpose_b(make_werner(0.9)) * n;
        r -= cx{v.min_pt_eigenvalue, 0} * n;
        CHECK(r.norm() < 1e-12);
    }
    SECTION("2x3 verdicts") {
        rng gen(23);
        CHECK(ppt_check(random_separable(gen, 6, 2, 3)).verdict == verdict_kind::separable);
        // bell pair embedded in 2x3 with an unused third B level
        cvec embedded(6);
        embedded[0] = 1.0 / std::sqrt(2.0);   // |0,0>
        embedded[4] = 1.0 / std::sqrt(2.0);   // |1,1>
        density_matrix rho = validate_density(outer(embedded), 2, 3);
        separability_verdict v = ppt_check(rho);
        CHECK(v.verdict == verdict_kind::inseparable);
        CHECK(v.min_pt_eigenvalue == Catch::Approx(-0.5));
    }
}

TEST_CASE("local time reversal equals the partial transpose") {
    SECTION("real-entried states: plain block transpose") {
        density_matrix rho = make_werner(0.4);
        CHECK(max_abs_diff(local_time_reversal(rho), partial_transpose_b(rho)) < 1e-14);
    }
    SECTION("bell projector") {
        density_matrix rho = validate_density(outer(make_bell(bell_kind::phi_plus)), 2, 2);
        CHECK(max_abs_diff(local_time_reversal(rho), partial_transpose_b(rho)) < 1e-14);
    }
    SECTION("maximally mixed is a fixed point") {
        cmat m = cmat::identity(4);
        m *= cx{0.25, 0};
        density_matrix rho = validate_density(m, 2, 2);
        CHECK(max_abs_diff(local_time_reversal(rho), m) < 1e-14);
    }
    SECTION("1000 random states, two independent code paths") {
        rng gen(24);
        for (int trial = 0; trial < 1000; ++trial) {
            density_matrix rho = random_state(gen, trial);
            CHECK(max_abs_diff(local_time_reversal(rho), partial_transpose_b(rho)) <= 1e-12);
        }
    }
    SECTION("2x3 unsupported") {
        rng gen(25);
        CHECK_THROWS_AS(local_time_reversal(random_separable(gen, 3, 2, 3)), error);
    }
}

TEST_CASE("negative_pt_spectrum") {
    SECTION("werner x = 0.8") {
        negative_spectrum n = negative_pt_spectrum(make_werner(0.8));
        CHECK(n.count == 1);
        CHECK(n.lambda_min == Catch::Approx(-0.35).margin(1e-12));
        REQUIRE(n.eigenvector.has_value());
        CHECK(n.eigenvector->norm() == Catch::Approx(1.0));
    }
    SECTION("singlet") {
        density_matrix rho = validate_density(outer(make_bell(bell_kind::psi_minus)), 2, 2);
        negative_spectrum n = negative_pt_spectrum(rho);
        CHECK(n.count == 1);
        CHECK(n.lambda_min == Catch::Approx(-0.5));
    }
    SECTION("separable input has no negative part") {
        rng gen(26);
        negative_spectrum n = negative_pt_spectrum(random_separable(gen, 8));
        CHECK(n.count == 0);
        CHECK_FALSE(n.eigenvector.has_value());
    }
    SECTION("at most one negative eigenvalue across 1000 random states") {
        rng gen(27);
        for (int trial = 0; trial < 1000; ++trial) {
            negative_spectrum n = negative_pt_spectrum(random_state(gen, trial));
            CHECK((n.count == 0 || n.count == 1));
        }
    }
}
