#pragma once

#include <stdexcept>
#include <string>

namespace qsep {

// Failure categories surfaced by the library. The CLI maps these onto
// process exit codes; library users can switch on code() instead of
// parsing messages.
enum class errc {
    invalid_input,
    not_hermitian,
    trace_not_one,
    not_positive,
    unsupported_dimension,
    not_a_product_vector,
    dependent_inputs,
    degenerate_parameter,
    no_solution_found,
    not_separable_input,
    not_applicable,
    numerical_rank_mismatch,
    inconsistent_state,
    parse_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_input: return "invalid_input";
        case errc::not_hermitian: return "not_hermitian";
        case errc::trace_not_one: return "trace_not_one";
        case errc::not_positive: return "not_positive";
        case errc::unsupported_dimension: return "unsupported_dimension";
        case errc::not_a_product_vector: return "not_a_product_vector";
        case errc::dependent_inputs: return "dependent_inputs";
        case errc::degenerate_parameter: return "degenerate_parameter";
        case errc::no_solution_found: return "no_solution_found";
        case errc::not_separable_input: return "not_separable_input";
        case errc::not_applicable: return "not_applicable";
        case errc::numerical_rank_mismatch: return "numerical_rank_mismatch";
        case errc::inconsistent_state: return "inconsistent_state";
        case errc::parse_error: return "parse_error";
    }
    return "unknown";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

}  // namespace qsep
