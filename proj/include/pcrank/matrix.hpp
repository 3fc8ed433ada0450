#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace pcrank {

/// Dense square matrix of doubles, row-major. Used for eigensolver input
/// (complete PC matrices and Harker auxiliary matrices).
struct DenseMatrix {
    int n = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    explicit DenseMatrix(int size) : n(size), data(static_cast<std::size_t>(size) * size, 0.0) {}

    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }

    bool operator==(const DenseMatrix&) const = default;
};

using RawGrid = std::vector<std::vector<std::optional<double>>>;

/// Reciprocal pairwise-comparison matrix with explicitly missing entries.
///
/// Missing comparisons are an explicit cell state (std::nullopt), never a
/// sentinel value inside the matrix. Construction canonicalizes from the
/// upper triangle: for every known pair the stored (j,i) entry is exactly
/// 1/c_ij. Instances are immutable after construction and safe to share
/// across threads.
class PCMatrix {
public:
    /// Relative tolerance for accepting c_ij * c_ji ~= 1 when both entries
    /// of a pair are supplied (input files may carry rounded reciprocals).
    static constexpr double kReciprocityTol = 1e-9;

    /// Validates a raw grid and canonicalizes it into a PCMatrix.
    ///
    /// Rules: the grid must be square with n >= 2; the diagonal must be
    /// Known(1); known values must be positive and finite; if exactly one
    /// of (i,j)/(j,i) is supplied the other is filled with its reciprocal;
    /// if both are supplied they must be mutually reciprocal within
    /// kReciprocityTol (the upper-triangle entry wins, the lower one is
    /// recomputed).
    ///
    /// Throws error with codes non_square, diagonal_not_one,
    /// non_positive_entry, reciprocity_violation.
    static PCMatrix validate(const RawGrid& grid);

    /// Builds a matrix from upper-triangle cells in row-major pair order
    /// ((0,1),(0,2),...,(0,n-1),(1,2),...); values must already be valid.
    static PCMatrix from_upper(int n, const std::vector<std::optional<double>>& upper);

    /// Copy of `base` with the given upper-triangle pairs set to Missing.
    /// Pairs may be given in either orientation; diagonal pairs are invalid.
    static PCMatrix remove_pairs(const PCMatrix& base,
                                 const std::vector<std::pair<int, int>>& pairs);

    int size() const noexcept { return n_; }

    bool known(int i, int j) const { return cells_[idx(i, j)].has_value(); }

    /// Known value at (i,j); calling on a Missing cell is a precondition
    /// violation checked in debug builds.
    double at(int i, int j) const { return *cells_[idx(i, j)]; }

    std::optional<double> cell(int i, int j) const { return cells_[idx(i, j)]; }

    bool complete() const noexcept;

    /// Number of unordered missing pairs {i,j}, i<j.
    int missing_count() const noexcept;

    /// Number of missing off-diagonal cells in row i (counts both triangles).
    int missing_in_row(int i) const;

    /// Number of known off-diagonal comparisons in row i, i.e. the output
    /// degree of alternative i in the comparison graph.
    /// Throws error(index_out_of_range) for i outside [0, n).
    int outdeg(int i) const;

    /// Dense copy; requires a complete matrix (throws incomplete_matrix).
    DenseMatrix to_dense() const;

    /// Row-major upper-triangle pair index of (i,j), i < j.
    static int pair_index(int n, int i, int j) {
        return i * n - i * (i + 1) / 2 + (j - i - 1);
    }

    bool operator==(const PCMatrix&) const = default;

private:
    PCMatrix(int n, std::vector<std::optional<double>> cells)
        : n_(n), cells_(std::move(cells)) {}

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

    int n_ = 0;
    std::vector<std::optional<double>> cells_;
};

}  // namespace pcrank
