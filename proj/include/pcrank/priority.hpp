#pragma once

#include <vector>

#include "pcrank/matrix.hpp"

namespace pcrank {

/// Positive priority weights normalized to sum 1 (L1), one per alternative.
class PriorityVector {
public:
    /// Normalizes a vector of positive weights to sum 1.
    static PriorityVector normalized(std::vector<double> weights);

    int size() const noexcept { return static_cast<int>(weights_.size()); }
    double operator[](int i) const { return weights_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    auto begin() const { return weights_.begin(); }
    auto end() const { return weights_.end(); }

    bool operator==(const PriorityVector&) const = default;

private:
    explicit PriorityVector(std::vector<double> weights) : weights_(std::move(weights)) {}
    std::vector<double> weights_;
};

/// Perron eigenpair as returned by the eigenvalue method.
struct EigenResult {
    double lambda_max = 0.0;      ///< spectral radius of the input matrix
    PriorityVector vector;        ///< normalized principal eigenvector
    int iterations = 0;           ///< power-iteration steps used
    double residual = 0.0;        ///< max-norm of A*v - lambda*v at return
};

inline constexpr double kDefaultEvmTol = 1e-12;
inline constexpr int kDefaultEvmMaxIter = 100000;

/// Eigenvalue method: the Perron eigenpair of a nonnegative irreducible
/// matrix, computed by power iteration on A + n*I (the shift makes the
/// iteration matrix primitive, so convergence is guaranteed). The start
/// vector is uniform and the whole computation is deterministic.
///
/// Throws error(not_irreducible) when the directed graph of positive
/// entries is not strongly connected, and no_convergence_error when
/// max_iter is exhausted with the residual still above tol.
EigenResult evm(const DenseMatrix& a,
                double tol = kDefaultEvmTol,
                int max_iter = kDefaultEvmMaxIter);

/// evm over the dense copy of a complete PC matrix.
/// Throws error(incomplete_matrix) when C has missing entries.
EigenResult evm(const PCMatrix& matrix,
                double tol = kDefaultEvmTol,
                int max_iter = kDefaultEvmMaxIter);

/// Geometric mean method: weight i proportional to the n-th root of the
/// product of row i. Defined for complete matrices only; incomplete input
/// throws error(incomplete_matrix).
PriorityVector gmm(const PCMatrix& matrix);

/// Harker's auxiliary matrix B + Id: keeps known off-diagonal entries,
/// zeroes missing ones, and sets diagonal entry i to 1 + (number of missing
/// comparisons in row i). For a complete matrix this is the matrix itself.
DenseMatrix harker_matrix(const PCMatrix& matrix);

/// Ranking for (possibly incomplete) irreducible matrices: evm applied to
/// harker_matrix(C).
EigenResult harker_rank(const PCMatrix& matrix,
                        double tol = kDefaultEvmTol,
                        int max_iter = kDefaultEvmMaxIter);

}  // namespace pcrank
