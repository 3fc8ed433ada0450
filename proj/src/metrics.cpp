#include "pcrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pcrank/errors.hpp"

namespace pcrank {

namespace {

void require_same_length(int a, int b) {
    if (a != b) {
        throw error(errc::length_mismatch,
                    "vector lengths differ: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

int sign(int v) { return (v > 0) - (v < 0); }

}  // namespace

double manhattan(const PriorityVector& w, const PriorityVector& u) {
    require_same_length(w.size(), u.size());
    // Summed in sorted order so the result is bit-identical under any
    // simultaneous permutation of the two vectors.
    std::vector<double> diffs(w.size());
    for (int i = 0; i < w.size(); ++i) diffs[i] = std::fabs(w[i] - u[i]);
    std::sort(diffs.begin(), diffs.end());
    double sum = 0.0;
    for (double d : diffs) sum += d;
    return sum;
}

OrdinalVector ordinal(const PriorityVector& w) {
    const int n = w.size();
    OrdinalVector out;
    out.positions.resize(n);
    for (int i = 0; i < n; ++i) {
        int better = 0;
        for (int j = 0; j < n; ++j) {
            if (w[j] > w[i]) ++better;
        }
        out.positions[i] = better + 1;
    }
    return out;
}

int kendall(const OrdinalVector& p, const OrdinalVector& q) {
    require_same_length(p.size(), q.size());
    const int n = p.size();
    int disagreements = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (sign(p[i] - p[j]) != sign(q[i] - q[j])) ++disagreements;
        }
    }
    return disagreements;
}

double kendall_rescaled(const OrdinalVector& p, const OrdinalVector& q) {
    const int n = p.size();
    return 2.0 * kendall(p, q) / (static_cast<double>(n) * (n - 1));
}

std::pair<double, double> ranking_distance(const PriorityVector& w, const PriorityVector& u) {
    return {manhattan(w, u), kendall_rescaled(ordinal(w), ordinal(u))};
}

}  // namespace pcrank
