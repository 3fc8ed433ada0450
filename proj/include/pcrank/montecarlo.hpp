#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pcrank/indices.hpp"
#include "pcrank/matrix.hpp"
#include "pcrank/priority.hpp"
#include "pcrank/rng.hpp"

namespace pcrank {

/// How comparisons are removed from a complete matrix.
enum class RemovalScheme {
    random_irreducible,  ///< sequential random removals that keep the graph connected
    regular_cb,          ///< deterministic, maximally even pattern (diagonal-major order)
    irregular_cw,        ///< deterministic, maximally uneven pattern (row-major order)
};

const char* scheme_name(RemovalScheme scheme) noexcept;

/// Largest number of upper-triangle comparisons that can be removed while a
/// ranking may still exist: n(n-1)/2 - (n-1).
constexpr int max_missing(int n) { return (n * n - 3 * n + 2) / 2; }

struct ExperimentConfig {
    int n = 9;
    int matrix_count = 1000;
    std::vector<double> ci_targets;  ///< ladder for the sensitivity study, single value for distribution
    double alpha = kDefaultAlpha;
    double beta = kDefaultBeta;
    std::uint64_t seed = 0;
    RemovalScheme scheme = RemovalScheme::random_irreducible;
    int calib_samples = 200;  ///< matrices per calibration evaluation
    int buckets = 10;         ///< incompleteness-index buckets per unit interval
    double tol = kDefaultEvmTol;
    int max_iter = kDefaultEvmMaxIter;

    /// Throws error(bad_config) on invalid settings (n < 3, empty or
    /// non-ascending ci_targets, matrix_count < 1, ...).
    void validate() const;
};

/// One Monte Carlo observation.
struct ExperimentRecord {
    std::uint64_t seed = 0;  ///< master seed of the run
    int base_id = 0;         ///< which consistent base matrix
    int ci_group = 0;        ///< index into ci_targets
    double ci_actual = 0.0;  ///< CI of the disturbed complete matrix
    int k = 0;               ///< missing comparisons
    RemovalScheme scheme = RemovalScheme::random_irreducible;
    double iid_alpha = 0.0;
    double ii_beta = 0.0;
    double tree_index = 0.0;
    double compound = 0.0;
    double manhattan = 0.0;         ///< NaN when not converged
    double kendall_rescaled = 0.0;  ///< NaN when not converged
    bool converged = true;
};

/// Complete consistent matrix c_ij = w_i/w_j for a hidden weight vector
/// drawn log-uniformly from [1, 9].
PCMatrix random_consistent(int n, Rng& rng);

/// Multiplies every known upper-triangle entry by an independent factor
/// drawn log-uniformly from [1/(1+spread), 1+spread] and restores
/// reciprocity from the upper triangle. spread = 0 returns the input
/// unchanged.
PCMatrix disturb(const PCMatrix& matrix, double spread, Rng& rng);

/// Finds a disturbance spread whose mean CI over `samples` random matrices
/// is within max(0.002, 5% relative) of ci_target, by bisection with common
/// random numbers. Throws error(calibration_failed) when the target cannot
/// be bracketed or met within the bisection budget.
double calibrate_spread(int n, double ci_target, Rng& rng, int samples);

/// Removes exactly k upper-triangle comparisons one at a time, choosing
/// uniformly at each step among the edges whose removal keeps the comparison
/// graph connected (the non-bridges). Requires a complete input; throws
/// error(k_too_large) when k exceeds max_missing(n).
PCMatrix random_irreducible_incomplete(const PCMatrix& matrix, int k, Rng& rng);

/// First x pairs of the row-major numbering (row 1 slots c_13..c_1n, then
/// row 2 slots c_24..c_2n, ...). Removing them concentrates the gaps on the
/// lowest-numbered alternatives. Superdiagonal entries are never numbered,
/// so the result always stays irreducible. Pairs are 0-based.
/// Throws error(x_too_large) when x exceeds max_missing(n).
std::vector<std::pair<int, int>> removal_pattern_irregular(int n, int x);

/// First x pairs of the diagonal-major numbering (second superdiagonal
/// first, then the third, ...), which spreads the gaps as evenly as the
/// count allows. Pairs are 0-based. Throws error(x_too_large).
std::vector<std::pair<int, int>> removal_pattern_regular(int n, int x);

/// The 41-level average-CI ladder used by default for the sensitivity
/// study: log-spaced from 0.001 to 0.385.
std::vector<double> default_ci_ladder();

/// Worker threads for the experiment drivers: PCRANK_THREADS when set,
/// otherwise the hardware default.
int worker_count();

/// Streaming mean/variance accumulator.
struct Welford {
    long long count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double d = x - mean;
        mean += d / count;
        m2 += d * (x - mean);
    }
    double variance() const { return count > 1 ? m2 / (count - 1) : 0.0; }
    double se() const { return count > 1 ? std::sqrt(variance() / count) : 0.0; }
};

enum class IndexKind { iid_alpha = 0, ii_beta = 1, tree = 2, compound = 3 };
inline constexpr int kIndexKinds = 4;
const char* index_kind_name(IndexKind kind) noexcept;
double record_index(const ExperimentRecord& record, IndexKind kind) noexcept;

/// Mean-sensitivity surface over (CI group x incompleteness bucket), one
/// per index kind.
struct SensitivityAggregate {
    struct Cell {
        Welford md;
        Welford krd;
    };

    int groups = 0;
    int buckets = 0;
    std::array<std::vector<Cell>, kIndexKinds> cells;  ///< [kind][group * buckets + bucket]
    std::vector<Welford> group_ci;                     ///< realized CI per group
    long long records = 0;
    long long excluded = 0;  ///< non-converged, left out of distance means

    Cell& cell(IndexKind kind, int group, int bucket) {
        return cells[static_cast<int>(kind)][static_cast<std::size_t>(group) * buckets + bucket];
    }
    const Cell& cell(IndexKind kind, int group, int bucket) const {
        return cells[static_cast<int>(kind)][static_cast<std::size_t>(group) * buckets + bucket];
    }
    int bucket_of(double value) const {
        const int b = static_cast<int>(value * buckets);
        return b < 0 ? 0 : (b >= buckets ? buckets - 1 : b);
    }
};

/// Per (scheme x missing-count) summary of the distribution study.
struct DistributionAggregate {
    struct Cell {
        Welford md;
        Welford krd;
        std::array<Welford, kIndexKinds> index;
        long long excluded = 0;
    };

    int k_max = 0;
    std::vector<Cell> regular_cb;    ///< indexed by k
    std::vector<Cell> irregular_cw;  ///< indexed by k
    Welford ci;                      ///< realized CI over base matrices
    long long records = 0;
    long long excluded = 0;
};

/// Receives records in deterministic order (base_id, then group, then k;
/// the distribution study interleaves cb before cw per k).
using RecordSink = std::function<void(const ExperimentRecord&)>;

struct SensitivityResult {
    std::vector<double> spreads;  ///< calibrated disturbance per CI group
    SensitivityAggregate aggregate;
};

struct DistributionResult {
    double spread = 0.0;
    DistributionAggregate aggregate;
};

/// The incompleteness/inconsistency sensitivity study: matrix_count
/// consistent bases, one disturbed copy per CI target, and every missing
/// count k = 0..max_missing(n) sampled with the random irreducible scheme.
/// Each trial is compared against the EVM ranking of its undisturbed
/// complete ancestor. Deterministic for a fixed seed, for any worker count.
SensitivityResult run_sensitivity_study(const ExperimentConfig& cfg,
                                        const RecordSink& sink = {});

/// The missing-comparison distribution study: matrix_count bases disturbed
/// to one CI target, then drained through both deterministic removal
/// schemes for every k = 0..max_missing(n).
DistributionResult run_distribution_study(const ExperimentConfig& cfg,
                                          const RecordSink& sink = {});

namespace detail {

/// disturb() with the noise exponents supplied by the caller; used for
/// common-random-number calibration. `noise` holds one exponent in [-1,1]
/// per upper-triangle pair in row-major order.
PCMatrix disturb_with_noise(const PCMatrix& matrix, double spread,
                            const std::vector<double>& noise);

}  // namespace detail

}  // namespace pcrank
