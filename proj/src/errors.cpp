#include "pcrank/errors.hpp"

namespace pcrank {

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::non_square: return "NonSquare";
        case errc::diagonal_not_one: return "DiagonalNotOne";
        case errc::non_positive_entry: return "NonPositiveEntry";
        case errc::reciprocity_violation: return "ReciprocityViolation";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::incomplete_matrix: return "IncompleteMatrix";
        case errc::not_irreducible: return "NotIrreducible";
        case errc::no_convergence: return "NoConvergence";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::undefined_for_order_two: return "UndefinedForOrderTwo";
        case errc::k_too_large: return "KTooLarge";
        case errc::x_too_large: return "XTooLarge";
        case errc::calibration_failed: return "CalibrationFailed";
        case errc::parse_error: return "ParseError";
        case errc::bad_config: return "BadConfig";
    }
    return "Unknown";
}

}  // namespace pcrank
