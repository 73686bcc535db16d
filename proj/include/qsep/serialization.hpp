#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsep/decomposition.hpp"

namespace qsep {

// On-disk formats. Complex scalars are [re, im] pairs; matrices are
// row-major nested arrays in the computational basis ordering i*dim_b + mu.
// Doubles survive a serialize/parse round trip bit-exactly.

struct state_file {
    int dim_a = 2, dim_b = 2;
    cmat matrix{4, 4};
};

struct vector_file {
    int dim_a = 2, dim_b = 2;
    std::vector<cvec> vectors;
};

struct decomposition_file {
    int dim_a = 2, dim_b = 2;
    struct term {
        double weight;
        std::vector<std::array<double, 2>> e, f;
    };
    std::vector<term> terms;
    // metadata
    std::string verdict;
    double reconstruction_error = 0;
    std::optional<std::array<double, 2>> pbar;
    struct step {
        int stage;
        double threshold;
        int rank_rho, rank_pt;
    };
    std::vector<step> steps;
};

namespace io {

using nlohmann::json;

inline json complex_to_json(cx z) { return json::array({z.real(), z.imag()}); }

inline cx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw error(errc::parse_error, "complex entries must be [re, im] number pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json vec_to_json(const cvec& v) {
    json out = json::array();
    for (int i = 0; i < v.dim(); ++i) out.push_back(complex_to_json(v[i]));
    return out;
}

inline cvec vec_from_json(const json& j, int expect_dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != expect_dim)
        throw error(errc::parse_error, "vector of dimension " + std::to_string(expect_dim) + " expected");
    cvec v(expect_dim);
    for (int i = 0; i < expect_dim; ++i) v[i] = complex_from_json(j[i]);
    return v;
}

inline json state_to_json(const state_file& s) {
    json rows = json::array();
    for (int i = 0; i < s.matrix.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < s.matrix.cols(); ++j) row.push_back(complex_to_json(s.matrix(i, j)));
        rows.push_back(row);
    }
    return json{{"dim_a", s.dim_a}, {"dim_b", s.dim_b}, {"matrix", rows}};
}

inline state_file state_from_json(const json& j) {
    state_file out;
    try {
        out.dim_a = j.at("dim_a").get<int>();
        out.dim_b = j.at("dim_b").get<int>();
    } catch (const json::exception& e) {
        throw error(errc::parse_error, std::string("state file: ") + e.what());
    }
    if (out.dim_a < 1 || out.dim_b < 1 || out.dim_a * out.dim_b > max_dim)
        throw error(errc::parse_error, "state file: unsupported dimensions");
    const int d = out.dim_a * out.dim_b;
    const json& rows = j.at("matrix");
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
        throw error(errc::parse_error, "state file: matrix must have " + std::to_string(d) + " rows");
    out.matrix = cmat(d, d);
    for (int i = 0; i < d; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw error(errc::parse_error, "state file: ragged matrix row");
        for (int k = 0; k < d; ++k) out.matrix(i, k) = complex_from_json(row[k]);
    }
    return out;
}

inline json vectors_to_json(const vector_file& v) {
    json arr = json::array();
    for (const cvec& x : v.vectors) arr.push_back(vec_to_json(x));
    return json{{"dim_a", v.dim_a}, {"dim_b", v.dim_b}, {"vectors", arr}};
}

inline vector_file vectors_from_json(const json& j) {
    vector_file out;
    try {
        out.dim_a = j.at("dim_a").get<int>();
        out.dim_b = j.at("dim_b").get<int>();
        const json& arr = j.at("vectors");
        if (!arr.is_array()) throw error(errc::parse_error, "vector file: vectors must be an array");
        for (const json& v : arr) out.vectors.push_back(vec_from_json(v, out.dim_a * out.dim_b));
    } catch (const json::exception& e) {
        throw error(errc::parse_error, std::string("vector file: ") + e.what());
    }
    return out;
}

inline std::vector<std::array<double, 2>> pairs_of(const cvec& v) {
    std::vector<std::array<double, 2>> out;
    for (int i = 0; i < v.dim(); ++i) out.push_back({v[i].real(), v[i].imag()});
    return out;
}

inline decomposition_file decomposition_to_file(const decomposition_report& r) {
    decomposition_file out;
    out.dim_a = r.decomposition.dim_a();
    out.dim_b = r.decomposition.dim_b();
    for (const auto& t : r.decomposition.terms())
        out.terms.push_back({t.weight, pairs_of(t.state.e()), pairs_of(t.state.f())});
    out.verdict = verdict_name(r.verdict.verdict);
    out.reconstruction_error = r.reconstruction_error;
    out.pbar = r.pbar;
    for (const auto& s : r.steps) out.steps.push_back({s.stage, s.threshold, s.rank_rho, s.rank_pt});
    return out;
}

inline json decomposition_to_json(const decomposition_file& d) {
    json terms = json::array();
    for (const auto& t : d.terms) {
        json e = json::array(), f = json::array();
        for (const auto& p : t.e) e.push_back(json::array({p[0], p[1]}));
        for (const auto& p : t.f) f.push_back(json::array({p[0], p[1]}));
        terms.push_back(json{{"weight", t.weight}, {"e", e}, {"f", f}});
    }
    json steps = json::array();
    for (const auto& s : d.steps)
        steps.push_back(json{{"stage", s.stage},
                             {"threshold", s.threshold},
                             {"rank_rho", s.rank_rho},
                             {"rank_pt", s.rank_pt}});
    json metadata{{"verdict", d.verdict},
                  {"reconstruction_error", d.reconstruction_error},
                  {"steps", steps}};
    if (d.pbar) metadata["pbar"] = json::array({(*d.pbar)[0], (*d.pbar)[1]});
    return json{{"dim_a", d.dim_a}, {"dim_b", d.dim_b}, {"terms", terms}, {"metadata", metadata}};
}

inline decomposition_file decomposition_from_json(const json& j) {
    decomposition_file out;
    try {
        out.dim_a = j.at("dim_a").get<int>();
        out.dim_b = j.at("dim_b").get<int>();
        for (const json& t : j.at("terms")) {
            decomposition_file::term term;
            term.weight = t.at("weight").get<double>();
            for (const json& p : t.at("e")) {
                cx z = complex_from_json(p);
                term.e.push_back({z.real(), z.imag()});
            }
            for (const json& p : t.at("f")) {
                cx z = complex_from_json(p);
                term.f.push_back({z.real(), z.imag()});
            }
            out.terms.push_back(std::move(term));
        }
        const json& metadata = j.at("metadata");
        out.verdict = metadata.at("verdict").get<std::string>();
        out.reconstruction_error = metadata.at("reconstruction_error").get<double>();
        if (metadata.contains("pbar")) {
            const json& p = metadata["pbar"];
            out.pbar = {{p[0].get<double>(), p[1].get<double>()}};
        }
        if (metadata.contains("steps"))
            for (const json& s : metadata["steps"])
                out.steps.push_back({s.at("stage").get<int>(), s.at("threshold").get<double>(),
                                     s.at("rank_rho").get<int>(), s.at("rank_pt").get<int>()});
    } catch (const json::exception& e) {
        throw error(errc::parse_error, std::string("decomposition file: ") + e.what());
    }
    return out;
}

inline weighted_decomposition decomposition_terms(const decomposition_file& d) {
    weighted_decomposition out(d.dim_a, d.dim_b);
    for (const auto& t : d.terms) {
        if (static_cast<int>(t.e.size()) != d.dim_a || static_cast<int>(t.f.size()) != d.dim_b)
            throw error(errc::parse_error, "decomposition term has wrong local dimensions");
        cvec e(d.dim_a), f(d.dim_b);
        for (int i = 0; i < d.dim_a; ++i) e[i] = {t.e[i][0], t.e[i][1]};
        for (int i = 0; i < d.dim_b; ++i) f[i] = {t.f[i][0], t.f[i][1]};
        out.add(t.weight, product_vector(e, f));
    }
    return out;
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::parse_error, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw error(errc::parse_error, path + ": " + e.what());
    }
    return j;
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw error(errc::parse_error, "cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace io
}  // namespace qsep
