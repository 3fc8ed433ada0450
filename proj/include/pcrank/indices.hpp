#pragma once

#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "pcrank/graph.hpp"
#include "pcrank/matrix.hpp"
#include "pcrank/priority.hpp"

namespace pcrank {

/// Exact integer wide enough for spanning-tree counts (up to n^(n-2)).
using BigInt = boost::multiprecision::cpp_int;

/// Saaty's consistency index (lambda_max - n)/(n - 1); zero iff the matrix
/// is fully consistent. Defined for complete matrices only; `eig` must have
/// been computed from `matrix`. Throws error(incomplete_matrix).
double consistency_index(const PCMatrix& matrix, const EigenResult& eig);

/// Degree-deficiency incompleteness index
///   IId_alpha(C) = (1/n) * sum_i (n-1-outdeg(a_i))^alpha / (n-1)^alpha.
/// In [0,1]; 0 for a complete matrix, 1 for a fully incomplete one. The
/// exponent alpha > 1 weights uneven gap distributions more heavily
/// (alpha = 1 degenerates to the plain missing fraction and is permitted).
double alpha_index(const PCMatrix& matrix, double alpha);

/// Largest alpha_index value a rankable matrix can attain:
///   (n-1)/n * ((n-2)/(n-1))^alpha,
/// reached when a single alternative is compared with all others. Exceeding
/// it proves the matrix cannot be ranked; staying below it proves nothing
/// (the condition is necessary, not sufficient). Requires n >= 3.
double alpha_rankability_bound(int n, double alpha);

/// Weakest-link incompleteness index
///   II_beta(C) = (max_i (n-1-outdeg))^beta * sum_i (n-1-outdeg)
///                / (n * (n-1)^(1+beta)).
/// In [0,1]; 0 iff complete, 1 iff fully incomplete. Requires beta >= 1.
double beta_index(const PCMatrix& matrix, double beta);

/// Exact number of spanning trees of the comparison graph, by the
/// matrix-tree theorem: the determinant of the Laplacian with row and
/// column 0 removed, evaluated with fraction-free integer elimination.
/// 0 iff the graph is disconnected; n^(n-2) for a complete matrix.
BigInt spanning_tree_count(const PCMatrix& matrix);

/// Tree incompleteness index TI(C) = 1 - NT(C)^(1/(n-2)) / n. In [0,1];
/// 0 iff the comparison graph is complete, 1 iff it is disconnected.
/// Throws error(undefined_for_order_two) for n = 2, where the exponent
/// 1/(n-2) is singular.
double tree_index(const PCMatrix& matrix);

/// Compound index II_{alpha,beta}(C) = alpha_index * beta_index.
double compound_index(const PCMatrix& matrix, double alpha, double beta);

/// All quality indices of one matrix. `ci` is present only for complete
/// matrices; `tree` is absent for n = 2 where the index is undefined.
struct IndexReport {
    int n = 0;
    int missing = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> ci;
    double iid_alpha = 0.0;
    double ii_beta = 0.0;
    BigInt spanning_trees;
    std::optional<double> tree;
    double compound = 0.0;
};

/// Index parameters used when the caller does not choose them.
inline constexpr double kDefaultAlpha = 1.5;
inline constexpr double kDefaultBeta = 1.0;

IndexReport report(const PCMatrix& matrix,
                   double alpha = kDefaultAlpha,
                   double beta = kDefaultBeta);

namespace detail {

/// Exact determinant by Bareiss fraction-free elimination; row-major input.
BigInt bareiss_determinant(std::vector<BigInt> m, int n);

/// Cofactor of the Laplacian obtained by deleting the given row/column.
/// All cofactors are equal by the matrix-tree theorem; the index is exposed
/// so tests can cross-check a second one.
BigInt laplacian_cofactor(const LaplacianMatrix& lap, int remove);

}  // namespace detail

}  // namespace pcrank
