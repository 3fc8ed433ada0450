#pragma once

#include <stdexcept>
#include <string>

namespace pcrank {

/// Machine-readable failure kinds surfaced by the library. The CLI maps
/// these to exit codes and single-line error prefixes.
enum class errc {
    non_square,
    diagonal_not_one,
    non_positive_entry,
    reciprocity_violation,
    index_out_of_range,
    incomplete_matrix,
    not_irreducible,
    no_convergence,
    length_mismatch,
    undefined_for_order_two,
    k_too_large,
    x_too_large,
    calibration_failed,
    parse_error,
    bad_config,
};

const char* errc_name(errc code) noexcept;

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return errc_name(code_); }

private:
    errc code_;
};

/// Thrown by the eigensolver when max_iter is exhausted; carries the last
/// residual so callers can report how far from convergence the run was.
class no_convergence_error : public error {
public:
    no_convergence_error(const std::string& what, double residual, int iterations)
        : error(errc::no_convergence, what),
          residual_(residual),
          iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// Thrown by the matrix-file reader; line/column are 1-based.
class parse_error : public error {
public:
    parse_error(const std::string& what, int line, int column)
        : error(errc::parse_error, what), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace pcrank
