#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssot {

enum class errc {
    // identifier / structure problems
    unknown_location,
    unknown_fact,
    duplicate_id,
    undeclared_id,
    cyclic_graph,
    empty_system,
    location_set_mismatch,
    invariant_violation,

    // edit problems
    derived_target_rejected,
    value_out_of_domain,

    // analysis preconditions
    fact_not_encoded,
    capacity_achieving,
    unary_domain,
    coherent_state,
    choice_not_present,
    insufficient_side_information,

    // numeric / bounds preconditions
    out_of_range,
    invalid_query,
    not_encoded,
    too_large,
    invalid_regime,

    // input handling
    syntax_error,
    io_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

/// Raised while reading system specs, edit scripts, config files or manifests.
/// Lines are 1-based; column is 0 when not meaningful.
class ParseError : public Error {
public:
    ParseError(errc code, const std::string& message, std::size_t line, std::size_t column = 0)
        : Error(code, message), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Raised when an edit script fails mid-run; step is the 0-based index of the
/// offending edit.
class SimulationError : public Error {
public:
    SimulationError(errc code, const std::string& message, std::size_t step)
        : Error(code, message), step_(step) {}

    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

} // namespace ssot
