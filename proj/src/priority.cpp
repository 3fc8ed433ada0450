#include "pcrank/priority.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <vector>

#include "pcrank/errors.hpp"
#include "pcrank/graph.hpp"

namespace pcrank {

namespace {

/// Strong connectivity of the directed graph with an edge i->j iff
/// a_ij > 0 (diagonal ignored): one sweep forward, one on the transpose.
bool strongly_connected(const DenseMatrix& a) {
    const int n = a.n;
    auto reach = [&](bool transpose) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                const double w = transpose ? a.at(j, v) : a.at(v, j);
                if (j != v && w > 0.0 && !seen[j]) {
                    seen[j] = 1;
                    ++count;
                    stack.push_back(j);
                }
            }
        }
        return count == n;
    };
    return reach(false) && reach(true);
}

}  // namespace

PriorityVector PriorityVector::normalized(std::vector<double> weights) {
    assert(!weights.empty());
    // The normalizer is summed in sorted order so that permuting the
    // alternatives permutes the normalized weights bit-for-bit.
    std::vector<double> sorted = weights;
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (double w : sorted) {
        assert(w > 0.0);
        sum += w;
    }
    for (double& w : weights) w /= sum;
    return PriorityVector(std::move(weights));
}

EigenResult evm(const DenseMatrix& a, double tol, int max_iter) {
    const int n = a.n;
    assert(n >= 1);
    assert(tol > 0.0);
    for (double v : a.data) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw error(errc::non_positive_entry, "evm requires a nonnegative finite matrix");
        }
    }
    if (!strongly_connected(a)) {
        throw error(errc::not_irreducible,
                    "matrix is reducible; the comparison graph is not connected");
    }

    // Power iteration on B = A + n*I. B is primitive (positive diagonal),
    // so the iterates converge to the Perron vector from any positive start.
    const double shift = static_cast<double>(n);
    std::vector<double> x(n, 1.0 / n);
    std::vector<double> y(n);
    double mu = 0.0;
    double residual = 0.0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        double xx = 0.0;
        double yx = 0.0;
        for (int i = 0; i < n; ++i) {
            double acc = shift * x[i];
            for (int j = 0; j < n; ++j) acc += a.at(i, j) * x[j];
            y[i] = acc;
            xx += x[i] * x[i];
            yx += acc * x[i];
        }
        mu = yx / xx;  // Rayleigh quotient for B

        double res = 0.0;
        double xmax = 0.0;
        for (int i = 0; i < n; ++i) {
            res = std::max(res, std::fabs(y[i] - mu * x[i]));
            xmax = std::max(xmax, std::fabs(x[i]));
        }
        if (res <= tol * xmax) {
            EigenResult out{mu - shift, PriorityVector::normalized(std::move(x)), iter, 0.0};
            // Residual reported against A and the normalized vector; equal to
            // the B-residual because the shift cancels.
            double r = 0.0;
            for (int i = 0; i < n; ++i) {
                double acc = 0.0;
                for (int j = 0; j < n; ++j) acc += a.at(i, j) * out.vector[j];
                r = std::max(r, std::fabs(acc - out.lambda_max * out.vector[i]));
            }
            out.residual = r;
            return out;
        }
        residual = res / xmax;

        double norm = 0.0;
        for (double v : y) norm += std::fabs(v);
        for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    throw no_convergence_error(
        "power iteration did not converge after " + std::to_string(max_iter) +
            " iterations (residual " + std::to_string(residual) + ")",
        residual, max_iter);
}

EigenResult evm(const PCMatrix& matrix, double tol, int max_iter) {
    return evm(matrix.to_dense(), tol, max_iter);
}

PriorityVector gmm(const PCMatrix& matrix) {
    const int n = matrix.size();
    if (!matrix.complete()) {
        throw error(errc::incomplete_matrix,
                    "the geometric mean method requires a complete matrix");
    }
    std::vector<double> weights(n);
    for (int i = 0; i < n; ++i) {
        double prod = 1.0;
        for (int j = 0; j < n; ++j) prod *= matrix.at(i, j);
        weights[i] = std::pow(prod, 1.0 / n);
    }
    return PriorityVector::normalized(std::move(weights));
}

DenseMatrix harker_matrix(const PCMatrix& matrix) {
    const int n = matrix.size();
    DenseMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                out.at(i, i) = 1.0 + matrix.missing_in_row(i);
            } else if (matrix.known(i, j)) {
                out.at(i, j) = matrix.at(i, j);
            }
        }
    }
    return out;
}

EigenResult harker_rank(const PCMatrix& matrix, double tol, int max_iter) {
    if (!is_irreducible(matrix)) {
        throw error(errc::not_irreducible,
                    "matrix is not irreducible; some alternatives cannot be compared even "
                    "indirectly");
    }
    return evm(harker_matrix(matrix), tol, max_iter);
}

}  // namespace pcrank
