#pragma once

#include <string>

#include "pcrank/matrix.hpp"

namespace pcrank {

/// Parses the matrix CSV format: one row per line, comma-separated fields.
/// A known value is a decimal number or a rational literal "p/q"; a missing
/// value is the single character "?". The diagonal must be 1.
///
/// Throws parse_error (with 1-based line/column) for malformed input and
/// error for validation failures.
PCMatrix parse_matrix_text(const std::string& text);

/// parse_matrix_text over the contents of `path`.
PCMatrix parse_matrix_file(const std::string& path);

/// Serializes a matrix back to the CSV format. Values are printed with 17
/// significant digits so parse(serialize(C)) reproduces C exactly.
std::string serialize_matrix(const PCMatrix& matrix);

}  // namespace pcrank
