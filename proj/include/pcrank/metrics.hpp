#pragma once

#include <utility>
#include <vector>

#include "pcrank/priority.hpp"

namespace pcrank {

/// Ordinal counterpart of a priority vector: positions[i] is the rank of
/// alternative i, with 1 the best. Ties receive equal competition ranks
/// (tied alternatives share the smallest applicable position, e.g. 1,1,3).
struct OrdinalVector {
    std::vector<int> positions;

    int size() const noexcept { return static_cast<int>(positions.size()); }
    int operator[](int i) const { return positions[static_cast<std::size_t>(i)]; }

    bool operator==(const OrdinalVector&) const = default;
};

/// Manhattan distance between two priority vectors; at most 2 for
/// normalized inputs. Throws error(length_mismatch).
double manhattan(const PriorityVector& w, const PriorityVector& u);

/// Maps a priority vector to its ordinal counterpart (rank 1 = largest
/// weight). Weight ties are exact-equality ties and share a competition rank.
OrdinalVector ordinal(const PriorityVector& w);

/// Kendall tau rank distance: the number of pairs i<j whose relative order
/// disagrees between p and q (a tie in exactly one of the two vectors counts
/// as a disagreement). Throws error(length_mismatch).
int kendall(const OrdinalVector& p, const OrdinalVector& q);

/// Kendall distance rescaled to [0,1] by its maximum n(n-1)/2.
double kendall_rescaled(const OrdinalVector& p, const OrdinalVector& q);

/// The two sensitivity measures between rankings: Manhattan distance on the
/// weights and rescaled Kendall distance on the ordinal counterparts.
std::pair<double, double> ranking_distance(const PriorityVector& w, const PriorityVector& u);

}  // namespace pcrank
