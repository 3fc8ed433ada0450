#pragma once

#include <cstdint>
#include <vector>

#include "pcrank/matrix.hpp"

namespace pcrank {

/// Kirchhoff Laplacian of the comparison graph: vertex degree on the
/// diagonal, -1 for adjacent pairs, 0 otherwise. Entries are exact
/// integers so spanning-tree counts stay exact downstream.
struct LaplacianMatrix {
    int n = 0;
    std::vector<std::int64_t> entries;  // row-major

    std::int64_t at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
};

/// Undirected view of a PC matrix: vertices are alternatives, an edge is
/// present iff the comparison is known. Reciprocity makes the undirected
/// view well defined; self-loops are excluded.
class ComparisonGraph {
public:
    explicit ComparisonGraph(const PCMatrix& matrix);

    int vertex_count() const noexcept { return n_; }

    bool adjacent(int i, int j) const { return adj_[static_cast<std::size_t>(i) * n_ + j]; }

    int degree(int i) const;

    int edge_count() const noexcept;

    /// All edges {i,j}, i < j, in row-major order.
    std::vector<std::pair<int, int>> edges() const;

    /// True iff every vertex is reachable from vertex 0 (breadth-first
    /// search on the symmetric relation).
    bool connected() const;

    /// Vertices of the connected component containing `start`.
    std::vector<int> component_of(int start) const;

    LaplacianMatrix laplacian() const;

private:
    int n_;
    std::vector<char> adj_;
};

/// True iff the comparison graph induced by C is connected, i.e. every two
/// alternatives are comparable at least indirectly and a ranking can be
/// derived from the known comparisons.
bool is_irreducible(const PCMatrix& matrix);

LaplacianMatrix laplacian(const PCMatrix& matrix);

}  // namespace pcrank
