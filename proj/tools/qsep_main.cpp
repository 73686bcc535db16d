// qsep: check, decompose, generate and verify small bipartite quantum
// states from the command line. File formats are JSON; see the README.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsep/qsep.hpp"
#include "qsep/serialization.hpp"

namespace {

using namespace qsep;

// exit codes: 0 ok/separable, 1 invalid state, 2 parse or numeric failure,
// 3 inseparable, 4 verification failure
int exit_code_for(const error& e) {
    switch (e.code()) {
        case errc::not_hermitian:
        case errc::trace_not_one:
        case errc::not_positive:
        case errc::unsupported_dimension:
            return 1;
        default:
            return 2;
    }
}

struct tol_flags {
    double scale = 1.0;
    std::optional<double> psd, rank, recon;

    tolerance_config resolve() const {
        tolerance_config tol;
        tol = tol.scaled(scale);
        if (psd) tol.psd_tol = *psd;
        if (rank) tol.rank_tol = *rank;
        if (recon) tol.recon_tol = *recon;
        tol.check();
        return tol;
    }
};

void add_tol_flags(CLI::App* cmd, tol_flags& t) {
    cmd->add_option("--tol", t.scale, "scale all default tolerances by this factor");
    cmd->add_option("--psd-tol", t.psd, "positivity tolerance (default 1e-9)");
    cmd->add_option("--rank-tol", t.rank, "rank threshold (default 1e-9)");
    cmd->add_option("--recon-tol", t.recon, "reconstruction tolerance (default 1e-8)");
}

density_matrix load_state(const std::string& path, const tolerance_config& tol) {
    state_file s = io::state_from_json(io::load_json(path));
    return validate_density(s.matrix, s.dim_a, s.dim_b, tol);
}

void emit(const io::json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::save_json(out_path, j);
}

int run_check(const std::string& input, const tol_flags& tf) {
    tolerance_config tol = tf.resolve();
    density_matrix rho = load_state(input, tol);
    separability_verdict v = ppt_check(rho, tol);
    std::printf("pt spectrum:");
    for (double lam : v.pt_spectrum) std::printf(" %.12g", lam);
    std::printf("\nmin pt eigenvalue: %.12g\n", v.min_pt_eigenvalue);
    std::printf("negative count: %d\n", v.negative_count);
    std::printf("verdict: %s%s\n", verdict_name(v.verdict), v.boundary ? " (boundary)" : "");
    return v.verdict == verdict_kind::separable ? 0 : 3;
}

int run_decompose(const std::string& input, const tol_flags& tf, std::uint64_t seed,
                  const std::string& out_path) {
    decomposition_config cfg;
    cfg.tol = tf.resolve();
    cfg.seed = seed;
    density_matrix rho = load_state(input, cfg.tol);
    decomposition_report r = decompose(rho, cfg);
    emit(io::decomposition_to_json(io::decomposition_to_file(r)), out_path);
    std::fprintf(stderr, "%s: %d terms (%d negative), reconstruction error %.3g\n",
                 verdict_name(r.verdict.verdict), r.decomposition.size(),
                 r.decomposition.negative_count(), r.reconstruction_error);
    return 0;
}

int run_verify(const std::string& state_path, const std::string& decomp_path, const tol_flags& tf) {
    tolerance_config tol = tf.resolve();
    density_matrix rho = load_state(state_path, tol);
    decomposition_file f = io::decomposition_from_json(io::load_json(decomp_path));
    weighted_decomposition d = io::decomposition_terms(f);
    verification_report v = verify_decomposition(d, rho, tol);
    std::printf("reconstruction error: %.12g\n", v.reconstruction_error);
    std::printf("weight sum: %.17g\n", v.weight_sum);
    std::printf("negative weights: %d\n", v.negative_count);
    std::printf("result: %s\n", v.pass ? "pass" : "fail");
    return v.pass ? 0 : 4;
}

int run_entropy(const std::string& input, const tol_flags& tf) {
    density_matrix rho = load_state(input, tf.resolve());
    std::printf("%.12f\n", index_of_correlation(rho));
    return 0;
}

io::json state_json(const density_matrix& rho) {
    state_file s;
    s.dim_a = rho.dim_a();
    s.dim_b = rho.dim_b();
    s.matrix = rho.matrix();
    return io::state_to_json(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"separability tests and canonical product-state decompositions"};
    app.require_subcommand(1);
    int rc = 0;

    // check
    auto* check = app.add_subcommand("check", "PPT separability verdict for a state file");
    std::string check_input;
    tol_flags check_tol;
    check->add_option("input", check_input, "state file (JSON)")->required();
    add_tol_flags(check, check_tol);
    check->callback([&] { rc = run_check(check_input, check_tol); });

    // decompose
    auto* dec = app.add_subcommand("decompose", "canonical product-state decomposition");
    std::string dec_input, dec_out;
    std::uint64_t dec_seed = 0;
    bool json_errors = false;
    tol_flags dec_tol;
    dec->add_option("input", dec_input, "state file (JSON)")->required();
    add_tol_flags(dec, dec_tol);
    dec->add_option("--seed", dec_seed, "seed for the free parameter sampling (default 0)");
    dec->add_option("--out", dec_out, "write the decomposition here instead of stdout");
    dec->add_flag("--json-errors", json_errors, "report failures as JSON on stdout");
    dec->callback([&] { rc = run_decompose(dec_input, dec_tol, dec_seed, dec_out); });

    // verify
    auto* ver = app.add_subcommand("verify", "audit a decomposition file against a state file");
    std::string ver_state, ver_decomp;
    tol_flags ver_tol;
    ver->add_option("state", ver_state, "state file (JSON)")->required();
    ver->add_option("decomposition", ver_decomp, "decomposition file (JSON)")->required();
    add_tol_flags(ver, ver_tol);
    ver->callback([&] { rc = run_verify(ver_state, ver_decomp, ver_tol); });

    // entropy
    auto* ent = app.add_subcommand("entropy", "index of correlation of a state file");
    std::string ent_input;
    tol_flags ent_tol;
    ent->add_option("input", ent_input, "state file (JSON)")->required();
    add_tol_flags(ent, ent_tol);
    ent->callback([&] { rc = run_entropy(ent_input, ent_tol); });

    // gen and its variants
    auto* gen = app.add_subcommand("gen", "generate states and vectors");
    gen->require_subcommand(1);
    gen->fallthrough();  // lets --out appear after the variant subcommand
    std::string gen_out;
    gen->add_option("--out", gen_out, "write output here instead of stdout");

    auto* gw = gen->add_subcommand("werner", "werner state with singlet fraction x");
    double werner_x = 0;
    gw->add_option("--x", werner_x, "singlet fraction in [0,1]")->required();
    gw->callback([&] { emit(state_json(make_werner(werner_x)), gen_out); });

    auto* gb = gen->add_subcommand("bell", "bell vector");
    std::string bell_name;
    gb->add_option("--kind", bell_name, "phi-plus | phi-minus | psi-plus | psi-minus")->required();
    gb->callback([&] {
        bell_kind kind;
        if (bell_name == "phi-plus") kind = bell_kind::phi_plus;
        else if (bell_name == "phi-minus") kind = bell_kind::phi_minus;
        else if (bell_name == "psi-plus") kind = bell_kind::psi_plus;
        else if (bell_name == "psi-minus") kind = bell_kind::psi_minus;
        else throw error(errc::invalid_input, "unknown bell kind: " + bell_name);
        vector_file v;
        v.vectors.push_back(make_bell(kind));
        emit(io::vectors_to_json(v), gen_out);
    });

    auto* gs = gen->add_subcommand("random-separable", "mixture of k random product states");
    int sep_k = 0;
    std::uint64_t sep_seed = 0;
    gs->add_option("--k", sep_k, "number of product terms, 1..16")->required();
    gs->add_option("--seed", sep_seed, "rng seed")->required();
    gs->callback([&] { emit(state_json(random_separable(sep_seed, sep_k)), gen_out); });

    auto* gr = gen->add_subcommand("random", "random state of prescribed rank");
    int rnd_rank = 0;
    std::uint64_t rnd_seed = 0;
    gr->add_option("--rank", rnd_rank, "rank, 1..4")->required();
    gr->add_option("--seed", rnd_seed, "rng seed")->required();
    gr->callback([&] { emit(state_json(random_density(rnd_seed, rnd_rank)), gen_out); });

    auto* gp = gen->add_subcommand("plane-case", "canonical plane, rotated by a seeded local unitary");
    std::string plane_type;
    std::vector<double> plane_angles;
    std::uint64_t plane_seed = 0;
    gp->add_option("--type", plane_type, "P1 | P2 | P3")->required();
    gp->add_option("--angles", plane_angles, "A,B,C,D")->required()->delimiter(',')->expected(4);
    gp->add_option("--seed", plane_seed, "rng seed for the local rotation")->required();
    gp->callback([&] {
        plane_kind kind;
        if (plane_type == "P1" || plane_type == "p1") kind = plane_kind::p1;
        else if (plane_type == "P2" || plane_type == "p2") kind = plane_kind::p2;
        else if (plane_type == "P3" || plane_type == "p3") kind = plane_kind::p3;
        else throw error(errc::invalid_input, "unknown plane type: " + plane_type);
        auto [v1, v2] = gen_plane_case(kind, plane_angles[0], plane_angles[1], plane_angles[2],
                                       plane_angles[3], plane_seed);
        vector_file v;
        v.vectors.push_back(v1);
        v.vectors.push_back(v2);
        emit(io::vectors_to_json(v), gen_out);
    });

    try {
        app.parse(argc, argv);
        return rc;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const error& e) {
        if (json_errors) {
            io::json j{{"error", errc_name(e.code())}, {"message", e.what()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::fprintf(stderr, "error: %s\n", e.what());
        }
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
