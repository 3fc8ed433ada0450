#include "pcrank/matrix.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "pcrank/errors.hpp"

namespace pcrank {

namespace {

std::string cell_name(int i, int j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void check_positive_finite(double v, int i, int j) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw error(errc::non_positive_entry,
                    "entry " + cell_name(i, j) + " must be a positive finite number, got " +
                        std::to_string(v));
    }
}

}  // namespace

PCMatrix PCMatrix::validate(const RawGrid& grid) {
    const int n = static_cast<int>(grid.size());
    if (n < 2) {
        throw error(errc::non_square,
                    "matrix must have at least 2 rows, got " + std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(grid[i].size()) != n) {
            throw error(errc::non_square,
                        "row " + std::to_string(i + 1) + " has " +
                            std::to_string(grid[i].size()) + " cells, expected " +
                            std::to_string(n));
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!grid[i][i].has_value() || *grid[i][i] != 1.0) {
            throw error(errc::diagonal_not_one,
                        "diagonal entry " + cell_name(i, i) + " must be 1");
        }
    }

    std::vector<std::optional<double>> cells(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) cells[static_cast<std::size_t>(i) * n + i] = 1.0;

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& up = grid[i][j];
            const auto& lo = grid[j][i];
            if (up.has_value()) check_positive_finite(*up, i, j);
            if (lo.has_value()) check_positive_finite(*lo, j, i);

            std::optional<double> canon;
            if (up.has_value() && lo.has_value()) {
                const double prod = *up * *lo;
                if (std::fabs(prod - 1.0) > kReciprocityTol) {
                    throw error(errc::reciprocity_violation,
                                "entries " + cell_name(i, j) + " and " + cell_name(j, i) +
                                    " are not mutually reciprocal (product " +
                                    std::to_string(prod) + ")");
                }
                canon = *up;  // upper triangle wins, lower is recomputed
            } else if (up.has_value()) {
                canon = *up;
            } else if (lo.has_value()) {
                canon = 1.0 / *lo;
            }

            if (canon.has_value()) {
                cells[static_cast<std::size_t>(i) * n + j] = *canon;
                cells[static_cast<std::size_t>(j) * n + i] = 1.0 / *canon;
            }
        }
    }
    return PCMatrix(n, std::move(cells));
}

PCMatrix PCMatrix::from_upper(int n, const std::vector<std::optional<double>>& upper) {
    assert(n >= 2);
    assert(static_cast<int>(upper.size()) == n * (n - 1) / 2);
    std::vector<std::optional<double>> cells(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) cells[static_cast<std::size_t>(i) * n + i] = 1.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& v = upper[pair_index(n, i, j)];
            if (v.has_value()) {
                check_positive_finite(*v, i, j);
                cells[static_cast<std::size_t>(i) * n + j] = *v;
                cells[static_cast<std::size_t>(j) * n + i] = 1.0 / *v;
            }
        }
    }
    return PCMatrix(n, std::move(cells));
}

PCMatrix PCMatrix::remove_pairs(const PCMatrix& base,
                                const std::vector<std::pair<int, int>>& pairs) {
    std::vector<std::optional<double>> cells = base.cells_;
    const int n = base.n_;
    for (auto [i, j] : pairs) {
        if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
            throw error(errc::index_out_of_range,
                        "pair " + cell_name(i, j) + " is not an off-diagonal cell");
        }
        cells[static_cast<std::size_t>(i) * n + j].reset();
        cells[static_cast<std::size_t>(j) * n + i].reset();
    }
    return PCMatrix(n, std::move(cells));
}

bool PCMatrix::complete() const noexcept {
    for (const auto& c : cells_) {
        if (!c.has_value()) return false;
    }
    return true;
}

int PCMatrix::missing_count() const noexcept {
    int count = 0;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if (!known(i, j)) ++count;
        }
    }
    return count;
}

int PCMatrix::missing_in_row(int i) const {
    if (i < 0 || i >= n_) {
        throw error(errc::index_out_of_range,
                    "row index " + std::to_string(i) + " outside [0," + std::to_string(n_) + ")");
    }
    int count = 0;
    for (int j = 0; j < n_; ++j) {
        if (j != i && !known(i, j)) ++count;
    }
    return count;
}

int PCMatrix::outdeg(int i) const { return n_ - 1 - missing_in_row(i); }

DenseMatrix PCMatrix::to_dense() const {
    if (!complete()) {
        throw error(errc::incomplete_matrix,
                    "matrix has " + std::to_string(missing_count()) +
                        " missing comparisons; a complete matrix is required");
    }
    DenseMatrix out(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) out.at(i, j) = at(i, j);
    }
    return out;
}

}  // namespace pcrank
