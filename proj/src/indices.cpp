#include "pcrank/indices.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "pcrank/errors.hpp"

namespace pcrank {

namespace detail {

BigInt bareiss_determinant(std::vector<BigInt> m, int n) {
    if (n == 0) return 1;
    auto e = [&](int i, int j) -> BigInt& { return m[static_cast<std::size_t>(i) * n + j]; };

    int sign = 1;
    BigInt prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (e(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i) {
                if (e(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            }
            if (swap_row < 0) return 0;  // zero column, singular
            for (int j = 0; j < n; ++j) std::swap(e(k, j), e(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                // Fraction-free update: the division is exact.
                e(i, j) = (e(i, j) * e(k, k) - e(i, k) * e(k, j)) / prev;
            }
            e(i, k) = 0;
        }
        prev = e(k, k);
    }
    return sign > 0 ? e(n - 1, n - 1) : -e(n - 1, n - 1);
}

BigInt laplacian_cofactor(const LaplacianMatrix& lap, int remove) {
    const int n = lap.n;
    assert(remove >= 0 && remove < n);
    const int m = n - 1;
    std::vector<BigInt> minor(static_cast<std::size_t>(m) * m);
    int r = 0;
    for (int i = 0; i < n; ++i) {
        if (i == remove) continue;
        int c = 0;
        for (int j = 0; j < n; ++j) {
            if (j == remove) continue;
            minor[static_cast<std::size_t>(r) * m + c] = lap.at(i, j);
            ++c;
        }
        ++r;
    }
    return bareiss_determinant(std::move(minor), m);
}

}  // namespace detail

namespace {

std::vector<int> degree_deficiencies(const PCMatrix& matrix) {
    const int n = matrix.size();
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = n - 1 - matrix.outdeg(i);
    return out;
}

void require_alpha(double alpha) {
    if (!(alpha >= 1.0)) {
        throw error(errc::bad_config, "alpha must be >= 1, got " + std::to_string(alpha));
    }
}

void require_beta(double beta) {
    if (!(beta >= 1.0)) {
        throw error(errc::bad_config, "beta must be >= 1, got " + std::to_string(beta));
    }
}

/// log of a positive BigInt. Goes through long double, whose exponent range
/// covers any spanning-tree count this library can produce.
double log_bigint(const BigInt& v) {
    assert(v > 0);
    return static_cast<double>(std::log(v.convert_to<long double>()));
}

}  // namespace

double consistency_index(const PCMatrix& matrix, const EigenResult& eig) {
    if (!matrix.complete()) {
        throw error(errc::incomplete_matrix,
                    "the consistency index is defined for complete matrices only");
    }
    const int n = matrix.size();
    return (eig.lambda_max - n) / (n - 1);
}

double alpha_index(const PCMatrix& matrix, double alpha) {
    require_alpha(alpha);
    const int n = matrix.size();
    const int missing = matrix.missing_count();
    if (missing == 0) return 0.0;
    if (missing == n * (n - 1) / 2) return 1.0;
    // Summing a histogram of the integer deficiencies keeps the result
    // independent of row order, so permuting alternatives cannot change the
    // index even in the last bit.
    std::vector<int> histogram(n, 0);
    for (int d : degree_deficiencies(matrix)) ++histogram[d];
    double sum = 0.0;
    for (int d = 0; d < n; ++d) {
        if (histogram[d] > 0) sum += histogram[d] * std::pow(static_cast<double>(d), alpha);
    }
    return std::clamp(sum / n / std::pow(static_cast<double>(n - 1), alpha), 0.0, 1.0);
}

double alpha_rankability_bound(int n, double alpha) {
    if (n < 3) {
        throw error(errc::bad_config,
                    "the rankability bound requires n >= 3, got " + std::to_string(n));
    }
    require_alpha(alpha);
    return (n - 1.0) / n * std::pow((n - 2.0) / (n - 1.0), alpha);
}

double beta_index(const PCMatrix& matrix, double beta) {
    require_beta(beta);
    const int n = matrix.size();
    const int missing = matrix.missing_count();
    if (missing == 0) return 0.0;
    if (missing == n * (n - 1) / 2) return 1.0;
    const std::vector<int> defs = degree_deficiencies(matrix);
    int max_def = 0;
    int sum_def = 0;
    for (int d : defs) {
        max_def = std::max(max_def, d);
        sum_def += d;
    }
    const double value = std::pow(static_cast<double>(max_def), beta) * sum_def /
                         (n * std::pow(static_cast<double>(n - 1), 1.0 + beta));
    return std::clamp(value, 0.0, 1.0);
}

BigInt spanning_tree_count(const PCMatrix& matrix) {
    return detail::laplacian_cofactor(ComparisonGraph(matrix).laplacian(), 0);
}

double tree_index(const PCMatrix& matrix) {
    const int n = matrix.size();
    if (n == 2) {
        throw error(errc::undefined_for_order_two,
                    "the tree index is undefined for n = 2 (exponent 1/(n-2))");
    }
    if (matrix.complete()) return 0.0;  // NT = n^(n-2) exactly
    const BigInt nt = spanning_tree_count(matrix);
    if (nt == 0) return 1.0;
    const double root = std::exp(log_bigint(nt) / (n - 2));
    return std::clamp(1.0 - root / n, 0.0, 1.0);
}

double compound_index(const PCMatrix& matrix, double alpha, double beta) {
    return alpha_index(matrix, alpha) * beta_index(matrix, beta);
}

IndexReport report(const PCMatrix& matrix, double alpha, double beta) {
    IndexReport out;
    out.n = matrix.size();
    out.missing = matrix.missing_count();
    out.alpha = alpha;
    out.beta = beta;
    if (matrix.complete()) {
        out.ci = consistency_index(matrix, evm(matrix));
    }
    out.iid_alpha = alpha_index(matrix, alpha);
    out.ii_beta = beta_index(matrix, beta);
    out.spanning_trees = spanning_tree_count(matrix);
    if (out.n >= 3) {
        out.tree = tree_index(matrix);
    }
    out.compound = out.iid_alpha * out.ii_beta;
    return out;
}

}  // namespace pcrank
