#include <catch2/catch_amalgamated.hpp>

#include "qsep/hermitian_eig.hpp"
#include "qsep/quadratic_roots.hpp"
#include "qsep/rng.hpp"
#include "qsep/svd2.hpp"

using namespace qsep;

namespace {

cmat random_hermitian(rng& gen, int n) {
    cmat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = gen.complex_gaussian();
    return hermitize(m);
}

cmat random_psd(rng& gen, int n, int rank) {
    cmat g(n, rank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = gen.complex_gaussian();
    return g * g.adjoint();
}

cmat reconstruct(const eig_result& e) {
    cmat out(e.dim, e.dim);
    for (int k = 0; k < e.dim; ++k) {
        cmat p = outer(e.vectors.col(k));
        p *= cx{e.values[k], 0};
        out += p;
    }
    return out;
}

}  // namespace

TEST_CASE("herm_eig on fixed spectra") {
    SECTION("identity") {
        eig_result e = herm_eig(cmat::identity(4));
        for (int k = 0; k < 4; ++k) CHECK(e.values[k] == Catch::Approx(1.0));
    }
    SECTION("diagonal") {
        eig_result e = herm_eig(cmat::diag({0.9, 0.1}));
        CHECK(e.values[0] == Catch::Approx(0.1));
        CHECK(e.values[1] == Catch::Approx(0.9));
    }
    SECTION("pauli x") {
        eig_result e = herm_eig(cmat{{0, 1}, {1, 0}});
        CHECK(e.values[0] == Catch::Approx(-1.0));
        CHECK(e.values[1] == Catch::Approx(1.0));
    }
}

TEST_CASE("herm_eig rejects bad input") {
    cmat m = cmat::identity(2);
    m(0, 1) = cx{std::nan(""), 0};
    CHECK_THROWS_AS(herm_eig(m), error);
    CHECK_THROWS_AS(herm_eig(cmat(2, 3)), error);
}

TEST_CASE("herm_eig reconstruction and unitarity over random matrices") {
    rng gen(1001);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + trial % max_dim;
        cmat m = random_hermitian(gen, n);
        eig_result e = herm_eig(m);

        double scale = std::max(1.0, m.max_abs());
        CHECK(max_abs_diff(reconstruct(e), m) <= 1e-11 * scale);

        CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, cmat::identity(n)) <= 1e-12);

        for (int k = 0; k < n; ++k) {
            cvec r = m * e.vectors.col(k);
            r -= cx{e.values[k], 0} * e.vectors.col(k);
            CHECK(r.norm() <= 1e-12 * scale);
        }
        for (int k = 0; k + 1 < n; ++k) CHECK(e.values[k] <= e.values[k + 1]);
    }
}

TEST_CASE("herm_eig is deterministic") {
    rng gen(7);
    cmat m = random_hermitian(gen, 5);
    eig_result a = herm_eig(m);
    eig_result b = herm_eig(m);
    CHECK(max_abs_diff(a.vectors, b.vectors) == 0.0);
}

TEST_CASE("rank_with_tol") {
    CHECK(rank_with_tol(cmat::identity(4), 1e-9) == 4);
    cvec e00{1, 0, 0, 0};
    CHECK(rank_with_tol(outer(e00), 1e-9) == 1);
    rng gen(42);
    for (int rank = 1; rank <= 4; ++rank) CHECK(rank_with_tol(random_psd(gen, 4, rank), 1e-9) == rank);
}

TEST_CASE("pinv_psd basics and Penrose identities") {
    CHECK(max_abs_diff(pinv_psd(cmat::identity(3), 1e-9), cmat::identity(3)) < 1e-13);
    CHECK(max_abs_diff(pinv_psd(cmat::diag({2, 0}), 1e-9), cmat::diag({0.5, 0})) < 1e-13);

    rng gen(43);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + trial % 5;
        int rank = 1 + trial % n;
        cmat m = random_psd(gen, n, rank);
        cmat p = pinv_psd(m, 1e-9);
        double scale = std::max(1.0, m.max_abs());
        CHECK(max_abs_diff(m * p * m, m) <= 1e-10 * scale);
        CHECK(max_abs_diff(p * m * p, p) <= 1e-10 * std::max(1.0, p.max_abs()));
        CHECK(max_abs_diff((m * p).adjoint(), m * p) <= 1e-10);
        CHECK(max_abs_diff((p * m).adjoint(), p * m) <= 1e-10);
    }
}

TEST_CASE("svd2 on fixed matrices") {
    SECTION("identity") {
        svd2_result s = svd2(cmat::identity(2));
        CHECK(s.s1 == Catch::Approx(1.0));
        CHECK(s.s2 == Catch::Approx(1.0));
    }
    SECTION("rank one") {
        svd2_result s = svd2(cmat{{1, 0}, {0, 0}});
        CHECK(s.s1 == Catch::Approx(1.0));
        CHECK(s.s2 == Catch::Approx(0.0).margin(1e-14));
    }
    SECTION("antidiagonal") {
        double r = 1.0 / std::sqrt(2.0);
        svd2_result s = svd2(cmat{{0, r}, {r, 0}});
        CHECK(s.s1 == Catch::Approx(r));
        CHECK(s.s2 == Catch::Approx(r));
    }
}

TEST_CASE("svd2 factorization property") {
    rng gen(44);
    for (int trial = 0; trial < 400; ++trial) {
        cmat m(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = gen.complex_gaussian();
        if (trial % 5 == 0) {
            // rank-deficient inputs
            m(1, 0) = m(0, 0) * 0.5;
            m(1, 1) = m(0, 1) * 0.5;
        }
        svd2_result s = svd2(m);
        CHECK(s.s1 >= s.s2);
        CHECK(s.s2 >= 0.0);
        cmat rebuilt = s.u * cmat::diag({s.s1, s.s2}) * s.v.adjoint();
        CHECK(max_abs_diff(rebuilt, m) <= 1e-12 * std::max(1.0, m.max_abs()));
        CHECK(max_abs_diff(s.u.adjoint() * s.u, cmat::identity(2)) <= 1e-12);
        CHECK(max_abs_diff(s.v.adjoint() * s.v, cmat::identity(2)) <= 1e-12);
        // phase convention: first nonzero entry of each U column real nonnegative
        for (int col = 0; col < 2; ++col) {
            cvec u = s.u.col(col);
            int idx = std::abs(u[0]) > 1e-12 ? 0 : 1;
            CHECK(u[idx].imag() == Catch::Approx(0.0).margin(1e-12));
            CHECK(u[idx].real() >= -1e-12);
        }
    }
}

namespace {

double substitution_residual(cx a, cx b, cx c, const projective_root& r) {
    // scaled to unit projective norm
    double n = std::sqrt(std::norm(r.alpha) + std::norm(r.beta));
    cx al = r.alpha / n, be = r.beta / n;
    return std::abs(a * al * al + b * al * be + c * be * be);
}

}  // namespace

TEST_CASE("quadratic_roots fixed cases") {
    SECTION("alpha*beta = 0") {
        root_set rs = quadratic_roots(0, 1, 0);
        REQUIRE(rs.kind == root_kind::two_roots);
        REQUIRE(rs.roots.size() == 2);
        bool has10 = false, has01 = false;
        for (const auto& r : rs.roots) {
            if (std::abs(r.alpha) > 0.5 && std::abs(r.beta) < 1e-14) has10 = true;
            if (std::abs(r.beta) > 0.5 && std::abs(r.alpha) < 1e-14) has01 = true;
        }
        CHECK(has10);
        CHECK(has01);
    }
    SECTION("perfect square") {
        root_set rs = quadratic_roots(1, -2, 1);
        REQUIRE(rs.kind == root_kind::one_double_root);
        REQUIRE(rs.roots.size() == 1);
        CHECK(std::abs(rs.roots[0].alpha - rs.roots[0].beta) < 1e-12);
    }
    SECTION("identically zero") {
        CHECK(quadratic_roots(0, 0, 0).kind == root_kind::all_solutions);
    }
    SECTION("degenerate leading coefficient") {
        root_set rs = quadratic_roots(0, 2, -1);
        REQUIRE(rs.kind == root_kind::two_roots);
        for (const auto& r : rs.roots) CHECK(substitution_residual(0, 2, -1, r) < 1e-12);
    }
}

TEST_CASE("quadratic_roots substitution property") {
    rng gen(45);
    for (int trial = 0; trial < 1000; ++trial) {
        cx a = gen.complex_gaussian(), b = gen.complex_gaussian(), c = gen.complex_gaussian();
        switch (trial % 7) {
            case 1: a = 0; break;
            case 2: c = 0; break;
            case 3: b = 0; break;
            case 4: a = c = 0; break;
            case 5: b = 2.0 * std::sqrt(a * c); break;  // double root
            default: break;
        }
        root_set rs = quadratic_roots(a, b, c);
        double m = std::max({std::abs(a), std::abs(b), std::abs(c)});
        if (rs.kind == root_kind::all_solutions) continue;
        CHECK(!rs.roots.empty());
        for (const auto& r : rs.roots) {
            CHECK(substitution_residual(a, b, c, r) <= 1e-10 * m);
            // normalization: larger component is exactly one
            CHECK(std::max(std::abs(r.alpha), std::abs(r.beta)) == 1.0);
        }
    }
}

TEST_CASE("kron and det2") {
    CHECK(max_abs_diff(kron(cmat::identity(2), cmat::identity(2)), cmat::identity(4)) == 0.0);
    CHECK(det2(cmat::identity(2)) == cx{1, 0});
    CHECK(det2(cmat{{0, 1}, {1, 0}}) == cx{-1, 0});
    CHECK_THROWS_AS(kron(cmat::identity(3), cmat::identity(3)), error);
}
