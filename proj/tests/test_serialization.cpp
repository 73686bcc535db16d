#include <catch2/catch_amalgamated.hpp>

#include "qsep/serialization.hpp"

using namespace qsep;

TEST_CASE("state files round-trip bit-exactly") {
    rng gen(61);
    for (int trial = 0; trial < 50; ++trial) {
        state_file s;
        s.dim_a = 2;
        s.dim_b = trial % 2 ? 2 : 3;
        int d = s.dim_a * s.dim_b;
        s.matrix = cmat(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) s.matrix(i, j) = gen.complex_gaussian();

        io::json j = io::state_to_json(s);
        state_file back = io::state_from_json(io::json::parse(j.dump()));
        CHECK(back.dim_a == s.dim_a);
        CHECK(back.dim_b == s.dim_b);
        CHECK(max_abs_diff(back.matrix, s.matrix) == 0.0);
    }
}

TEST_CASE("vector files round-trip") {
    vector_file v;
    v.vectors.push_back(make_bell(bell_kind::psi_minus));
    v.vectors.push_back(make_bell(bell_kind::phi_plus));
    io::json j = io::vectors_to_json(v);
    vector_file back = io::vectors_from_json(io::json::parse(j.dump()));
    REQUIRE(back.vectors.size() == 2);
    for (int i = 0; i < 4; ++i) CHECK(back.vectors[0][i] == v.vectors[0][i]);
}

TEST_CASE("decomposition files round-trip and rebuild the terms") {
    decomposition_report r = decompose(make_werner(0.5));
    decomposition_file f = io::decomposition_to_file(r);
    io::json j = io::decomposition_to_json(f);
    decomposition_file back = io::decomposition_from_json(io::json::parse(j.dump()));

    CHECK(back.verdict == "inseparable");
    CHECK(back.reconstruction_error == f.reconstruction_error);
    REQUIRE(back.pbar.has_value());
    CHECK((*back.pbar)[0] == (*f.pbar)[0]);
    REQUIRE(back.terms.size() == f.terms.size());
    CHECK(back.steps.size() == f.steps.size());

    weighted_decomposition d = io::decomposition_terms(back);
    CHECK(max_abs_diff(d.reconstruct(), make_werner(0.5).matrix()) <= 1e-8);
}

TEST_CASE("parse errors are reported as such") {
    CHECK_THROWS_AS(io::state_from_json(io::json::parse(R"({"dim_a": 2})")), error);
    CHECK_THROWS_AS(io::state_from_json(io::json::parse(R"({"dim_a": 2, "dim_b": 2, "matrix": []})")),
                    error);
    CHECK_THROWS_AS(io::state_from_json(io::json::parse(R"({"dim_a": 3, "dim_b": 3, "matrix": []})")),
                    error);
    try {
        io::state_from_json(io::json::parse(R"({"dim_a": 2})"));
    } catch (const error& e) {
        CHECK(e.code() == errc::parse_error);
    }
    CHECK_THROWS_AS(io::load_json("/nonexistent/path.json"), error);
}

TEST_CASE("json rendering of doubles is lossless") {
    double vals[] = {1.0 / 3.0, 0x1.fffffffffffffp-2, 1e-300, -0.7071067811865476};
    for (double v : vals) {
        io::json j = v;
        CHECK(io::json::parse(j.dump()).get<double>() == v);
    }
}
