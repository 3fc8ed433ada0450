#include "pcrank/graph.hpp"

#include <string>

#include "pcrank/errors.hpp"

namespace pcrank {

ComparisonGraph::ComparisonGraph(const PCMatrix& matrix)
    : n_(matrix.size()), adj_(static_cast<std::size_t>(n_) * n_, 0) {
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if (matrix.known(i, j)) {
                adj_[static_cast<std::size_t>(i) * n_ + j] = 1;
                adj_[static_cast<std::size_t>(j) * n_ + i] = 1;
            }
        }
    }
}

int ComparisonGraph::degree(int i) const {
    if (i < 0 || i >= n_) {
        throw error(errc::index_out_of_range,
                    "vertex " + std::to_string(i) + " outside [0," + std::to_string(n_) + ")");
    }
    int deg = 0;
    for (int j = 0; j < n_; ++j) deg += adj_[static_cast<std::size_t>(i) * n_ + j];
    return deg;
}

int ComparisonGraph::edge_count() const noexcept {
    int total = 0;
    for (char a : adj_) total += a;
    return total / 2;
}

std::vector<std::pair<int, int>> ComparisonGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if (adjacent(i, j)) out.emplace_back(i, j);
        }
    }
    return out;
}

std::vector<int> ComparisonGraph::component_of(int start) const {
    std::vector<char> seen(n_, 0);
    std::vector<int> queue{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (int j = 0; j < n_; ++j) {
            if (adjacent(v, j) && !seen[j]) {
                seen[j] = 1;
                queue.push_back(j);
            }
        }
    }
    return queue;
}

bool ComparisonGraph::connected() const {
    return static_cast<int>(component_of(0).size()) == n_;
}

LaplacianMatrix ComparisonGraph::laplacian() const {
    LaplacianMatrix lap;
    lap.n = n_;
    lap.entries.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (int i = 0; i < n_; ++i) {
        std::int64_t deg = 0;
        for (int j = 0; j < n_; ++j) {
            if (j != i && adjacent(i, j)) {
                lap.entries[static_cast<std::size_t>(i) * n_ + j] = -1;
                ++deg;
            }
        }
        lap.entries[static_cast<std::size_t>(i) * n_ + i] = deg;
    }
    return lap;
}

bool is_irreducible(const PCMatrix& matrix) {
    return ComparisonGraph(matrix).connected();
}

LaplacianMatrix laplacian(const PCMatrix& matrix) {
    return ComparisonGraph(matrix).laplacian();
}

}  // namespace pcrank
