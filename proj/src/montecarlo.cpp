#include "pcrank/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "pcrank/errors.hpp"
#include "pcrank/graph.hpp"
#include "pcrank/metrics.hpp"

namespace pcrank {

namespace {

// Stream tags for derive_seed; keep trial generators independent.
constexpr std::uint64_t kStreamBase = 1;
constexpr std::uint64_t kStreamDisturb = 2;
constexpr std::uint64_t kStreamRemove = 3;
constexpr std::uint64_t kStreamCalib = 4;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

const char* scheme_name(RemovalScheme scheme) noexcept {
    switch (scheme) {
        case RemovalScheme::random_irreducible: return "random";
        case RemovalScheme::regular_cb: return "cb";
        case RemovalScheme::irregular_cw: return "cw";
    }
    return "?";
}

const char* index_kind_name(IndexKind kind) noexcept {
    switch (kind) {
        case IndexKind::iid_alpha: return "iid_alpha";
        case IndexKind::ii_beta: return "ii_beta";
        case IndexKind::tree: return "tree_index";
        case IndexKind::compound: return "compound";
    }
    return "?";
}

double record_index(const ExperimentRecord& record, IndexKind kind) noexcept {
    switch (kind) {
        case IndexKind::iid_alpha: return record.iid_alpha;
        case IndexKind::ii_beta: return record.ii_beta;
        case IndexKind::tree: return record.tree_index;
        case IndexKind::compound: return record.compound;
    }
    return 0.0;
}

void ExperimentConfig::validate() const {
    if (n < 3) {
        throw error(errc::bad_config, "n must be >= 3, got " + std::to_string(n));
    }
    if (matrix_count < 1) {
        throw error(errc::bad_config, "matrix_count must be >= 1");
    }
    if (ci_targets.empty()) {
        throw error(errc::bad_config, "at least one CI target is required");
    }
    for (std::size_t i = 0; i < ci_targets.size(); ++i) {
        if (ci_targets[i] < 0.0) {
            throw error(errc::bad_config, "CI targets must be nonnegative");
        }
        if (i > 0 && ci_targets[i] < ci_targets[i - 1]) {
            throw error(errc::bad_config, "CI targets must be ascending");
        }
    }
    if (!(alpha >= 1.0)) {
        throw error(errc::bad_config, "alpha must be >= 1");
    }
    if (!(beta >= 1.0)) {
        throw error(errc::bad_config, "beta must be >= 1");
    }
    if (calib_samples < 1) {
        throw error(errc::bad_config, "calib_samples must be >= 1");
    }
    if (buckets < 1) {
        throw error(errc::bad_config, "buckets must be >= 1");
    }
    if (!(tol > 0.0) || max_iter < 1) {
        throw error(errc::bad_config, "tol must be positive and max_iter >= 1");
    }
}

PCMatrix random_consistent(int n, Rng& rng) {
    assert(n >= 2);
    std::vector<double> w(n);
    for (double& v : w) v = rng.log_uniform(1.0, 9.0);
    std::vector<std::optional<double>> upper(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            upper[PCMatrix::pair_index(n, i, j)] = w[i] / w[j];
        }
    }
    return PCMatrix::from_upper(n, upper);
}

namespace detail {

PCMatrix disturb_with_noise(const PCMatrix& matrix, double spread,
                            const std::vector<double>& noise) {
    assert(spread >= 0.0);
    const int n = matrix.size();
    assert(static_cast<int>(noise.size()) == n * (n - 1) / 2);
    std::vector<std::optional<double>> upper(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int p = PCMatrix::pair_index(n, i, j);
            if (matrix.known(i, j)) {
                upper[p] = matrix.at(i, j) * std::pow(1.0 + spread, noise[p]);
            }
        }
    }
    return PCMatrix::from_upper(n, upper);
}

}  // namespace detail

PCMatrix disturb(const PCMatrix& matrix, double spread, Rng& rng) {
    const int n = matrix.size();
    std::vector<double> noise(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (double& u : noise) u = rng.uniform(-1.0, 1.0);
    return detail::disturb_with_noise(matrix, spread, noise);
}

double calibrate_spread(int n, double ci_target, Rng& rng, int samples) {
    if (ci_target < 0.0) {
        throw error(errc::bad_config, "CI target must be nonnegative");
    }
    if (ci_target == 0.0) return 0.0;

    // Common random numbers: fixed bases and noise exponents make the mean
    // CI a continuous deterministic function of the spread, so bisection
    // lands on the target exactly.
    std::vector<PCMatrix> bases;
    std::vector<std::vector<double>> noises;
    bases.reserve(samples);
    noises.reserve(samples);
    const int pairs = n * (n - 1) / 2;
    for (int s = 0; s < samples; ++s) {
        bases.push_back(random_consistent(n, rng));
        std::vector<double> u(pairs);
        for (double& v : u) v = rng.uniform(-1.0, 1.0);
        noises.push_back(std::move(u));
    }

    const auto mean_ci = [&](double spread) {
        double sum = 0.0;
        for (int s = 0; s < samples; ++s) {
            const PCMatrix d = detail::disturb_with_noise(bases[s], spread, noises[s]);
            const EigenResult eig = evm(d, 1e-10, 50000);
            sum += (eig.lambda_max - n) / (n - 1);
        }
        return sum / samples;
    };

    const double tol = std::max(0.002, 0.05 * ci_target);

    double lo = 0.0;
    double hi = 0.25;
    double f_hi = mean_ci(hi);
    while (f_hi < ci_target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9) {
            throw error(errc::calibration_failed,
                        "CI target " + std::to_string(ci_target) + " cannot be bracketed");
        }
        f_hi = mean_ci(hi);
    }
    if (std::fabs(f_hi - ci_target) <= tol) return hi;

    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = mean_ci(mid);
        if (std::fabs(f_mid - ci_target) <= tol) return mid;
        if (f_mid < ci_target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15 * (1.0 + hi)) break;
    }
    throw error(errc::calibration_failed,
                "bisection failed to reach CI target " + std::to_string(ci_target));
}

namespace {

/// Bridges of the graph (edges whose removal disconnects it), by one DFS
/// with lowlink values.
std::vector<std::pair<int, int>> find_bridges(const ComparisonGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> disc(n, -1);
    std::vector<int> low(n, 0);
    std::vector<std::pair<int, int>> bridges;
    int timer = 0;

    // Iterative DFS; (vertex, parent, next-neighbor cursor).
    struct Frame {
        int v;
        int parent;
        int next = 0;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> stack{{root, -1}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < n) {
                const int u = f.next++;
                if (u == f.v || !g.adjacent(f.v, u)) continue;
                if (disc[u] == -1) {
                    disc[u] = low[u] = timer++;
                    stack.push_back({u, f.v});
                } else if (u != f.parent) {
                    low[f.v] = std::min(low[f.v], disc[u]);
                }
            } else {
                const int v = f.v;
                const int p = f.parent;
                stack.pop_back();
                if (p >= 0) {
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > disc[p]) {
                        bridges.emplace_back(std::min(p, v), std::max(p, v));
                    }
                }
            }
        }
    }
    return bridges;
}

}  // namespace

PCMatrix random_irreducible_incomplete(const PCMatrix& matrix, int k, Rng& rng) {
    const int n = matrix.size();
    if (!matrix.complete()) {
        throw error(errc::incomplete_matrix,
                    "random removal starts from a complete matrix");
    }
    if (k < 0 || k > max_missing(n)) {
        throw error(errc::k_too_large,
                    "k = " + std::to_string(k) + " outside [0, " +
                        std::to_string(max_missing(n)) + "] for n = " + std::to_string(n));
    }
    if (k == 0) return matrix;

    std::vector<std::pair<int, int>> removed;
    removed.reserve(k);
    PCMatrix current = matrix;
    for (int step = 0; step < k; ++step) {
        const ComparisonGraph g(current);
        const auto bridge_list = find_bridges(g);
        std::vector<char> is_bridge(static_cast<std::size_t>(n) * n, 0);
        for (auto [a, b] : bridge_list) {
            is_bridge[static_cast<std::size_t>(a) * n + b] = 1;
        }
        std::vector<std::pair<int, int>> candidates;
        for (auto [a, b] : g.edges()) {
            if (!is_bridge[static_cast<std::size_t>(a) * n + b]) candidates.emplace_back(a, b);
        }
        // k <= max_missing keeps at least n-1 edges plus one cycle edge here.
        assert(!candidates.empty());
        const auto pick = candidates[rng.uniform_below(candidates.size())];
        removed.push_back(pick);
        current = PCMatrix::remove_pairs(current, {pick});
    }
    return current;
}

namespace {

void check_pattern_x(int n, int x) {
    if (x < 0 || x > max_missing(n)) {
        throw error(errc::x_too_large,
                    "x = " + std::to_string(x) + " outside [0, " +
                        std::to_string(max_missing(n)) + "] for n = " + std::to_string(n));
    }
}

}  // namespace

std::vector<std::pair<int, int>> removal_pattern_irregular(int n, int x) {
    check_pattern_x(n, x);
    std::vector<std::pair<int, int>> out;
    out.reserve(x);
    for (int i = 0; i < n && static_cast<int>(out.size()) < x; ++i) {
        for (int j = i + 2; j < n && static_cast<int>(out.size()) < x; ++j) {
            out.emplace_back(i, j);
        }
    }
    return out;
}

std::vector<std::pair<int, int>> removal_pattern_regular(int n, int x) {
    check_pattern_x(n, x);
    std::vector<std::pair<int, int>> out;
    out.reserve(x);
    for (int d = 2; d < n && static_cast<int>(out.size()) < x; ++d) {
        for (int i = 0; i + d < n && static_cast<int>(out.size()) < x; ++i) {
            out.emplace_back(i, i + d);
        }
    }
    return out;
}

std::vector<double> default_ci_ladder() {
    constexpr int kLevels = 41;
    constexpr double kLow = 0.001;
    constexpr double kHigh = 0.385;
    std::vector<double> out(kLevels);
    const double la = std::log(kLow);
    const double lb = std::log(kHigh);
    for (int j = 0; j < kLevels; ++j) {
        out[j] = std::exp(la + (lb - la) * j / (kLevels - 1));
    }
    out.front() = kLow;
    out.back() = kHigh;
    return out;
}

int worker_count() {
    if (const char* env = std::getenv("PCRANK_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(std::min<long>(v, 512));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

/// Runs make(i) for i in [0, count) on a worker pool and feeds the results
/// to consume(i, block) on the calling thread in ascending order of i, so
/// the output (and any floating-point reduction) is independent of the
/// worker count. The buffer is bounded; the producer of the block the
/// consumer waits for is always allowed to store it.
template <typename Block>
void ordered_parallel_for(int count, int workers,
                          const std::function<Block(int)>& make,
                          const std::function<void(int, const Block&)>& consume) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) consume(i, make(i));
        return;
    }

    std::mutex mu;
    std::condition_variable cv_space;
    std::condition_variable cv_ready;
    std::map<int, Block> done;
    std::atomic<int> next{0};
    int want = 0;
    const std::size_t cap = static_cast<std::size_t>(workers) * 4;
    std::exception_ptr failure;

    auto work = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                Block block = make(i);
                std::unique_lock lock(mu);
                cv_space.wait(lock, [&] {
                    return done.size() < cap || i == want || failure != nullptr;
                });
                if (failure) return;
                done.emplace(i, std::move(block));
                cv_ready.notify_all();
            } catch (...) {
                std::unique_lock lock(mu);
                if (!failure) failure = std::current_exception();
                cv_ready.notify_all();
                cv_space.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);

    for (int i = 0; i < count; ++i) {
        Block block;
        {
            std::unique_lock lock(mu);
            want = i;
            cv_space.notify_all();
            cv_ready.wait(lock, [&] { return done.count(i) > 0 || failure != nullptr; });
            if (failure) break;
            block = std::move(done.at(i));
            done.erase(i);
            cv_space.notify_all();
        }
        try {
            consume(i, block);
        } catch (...) {
            std::unique_lock lock(mu);
            if (!failure) failure = std::current_exception();
            break;
        }
    }

    {
        std::unique_lock lock(mu);
        if (failure) next.store(count);
        cv_space.notify_all();
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

struct TrialIndices {
    double iid;
    double ii;
    double tree;
    double compound;
};

TrialIndices indices_of(const PCMatrix& m, double alpha, double beta) {
    const double a = alpha_index(m, alpha);
    const double b = beta_index(m, beta);
    return {a, b, tree_index(m), a * b};
}

ExperimentRecord make_trial_record(const ExperimentConfig& cfg, int base_id, int group,
                                   double ci_actual, int k, RemovalScheme scheme,
                                   const PCMatrix& m, const PriorityVector& baseline) {
    ExperimentRecord rec;
    rec.seed = cfg.seed;
    rec.base_id = base_id;
    rec.ci_group = group;
    rec.ci_actual = ci_actual;
    rec.k = k;
    rec.scheme = scheme;
    const TrialIndices ix = indices_of(m, cfg.alpha, cfg.beta);
    rec.iid_alpha = ix.iid;
    rec.ii_beta = ix.ii;
    rec.tree_index = ix.tree;
    rec.compound = ix.compound;
    try {
        const EigenResult eig = harker_rank(m, cfg.tol, cfg.max_iter);
        const auto [md, krd] = ranking_distance(eig.vector, baseline);
        rec.manhattan = md;
        rec.kendall_rescaled = krd;
    } catch (const no_convergence_error&) {
        rec.manhattan = kNaN;
        rec.kendall_rescaled = kNaN;
        rec.converged = false;
    }
    return rec;
}

double actual_ci(const ExperimentConfig& cfg, const PCMatrix& complete) {
    const EigenResult eig = evm(complete, cfg.tol, cfg.max_iter);
    return (eig.lambda_max - cfg.n) / (cfg.n - 1);
}

}  // namespace

SensitivityResult run_sensitivity_study(const ExperimentConfig& cfg, const RecordSink& sink) {
    cfg.validate();
    if (cfg.scheme != RemovalScheme::random_irreducible) {
        throw error(errc::bad_config, "the sensitivity study uses the random removal scheme");
    }
    const int n = cfg.n;
    const int k_max = max_missing(n);
    const int groups = static_cast<int>(cfg.ci_targets.size());

    SensitivityResult result;
    result.spreads.resize(groups);
    for (int j = 0; j < groups; ++j) {
        Rng rng(derive_seed(cfg.seed, kStreamCalib, j));
        result.spreads[j] = calibrate_spread(n, cfg.ci_targets[j], rng, cfg.calib_samples);
    }

    SensitivityAggregate& agg = result.aggregate;
    agg.groups = groups;
    agg.buckets = cfg.buckets;
    for (auto& kind_cells : agg.cells) {
        kind_cells.assign(static_cast<std::size_t>(groups) * cfg.buckets, {});
    }
    agg.group_ci.assign(groups, {});

    using Block = std::vector<ExperimentRecord>;
    const std::function<Block(int)> make = [&](int i) {
        Block block;
        block.reserve(static_cast<std::size_t>(groups) * (k_max + 1));
        Rng base_rng(derive_seed(cfg.seed, kStreamBase, i));
        const PCMatrix base = random_consistent(n, base_rng);
        const PriorityVector baseline = evm(base, cfg.tol, cfg.max_iter).vector;
        for (int j = 0; j < groups; ++j) {
            Rng disturb_rng(derive_seed(cfg.seed, kStreamDisturb, i, j));
            const PCMatrix disturbed = disturb(base, result.spreads[j], disturb_rng);
            const double ci = actual_ci(cfg, disturbed);
            for (int k = 0; k <= k_max; ++k) {
                Rng remove_rng(derive_seed(cfg.seed, kStreamRemove, i, j, k));
                const PCMatrix trial =
                    k == 0 ? disturbed : random_irreducible_incomplete(disturbed, k, remove_rng);
                block.push_back(make_trial_record(cfg, i, j, ci, k,
                                                  RemovalScheme::random_irreducible, trial,
                                                  baseline));
            }
        }
        return block;
    };

    const std::function<void(int, const Block&)> consume = [&](int, const Block& block) {
        for (const ExperimentRecord& rec : block) {
            if (sink) sink(rec);
            ++agg.records;
            if (rec.k == 0) agg.group_ci[rec.ci_group].add(rec.ci_actual);
            if (!rec.converged) {
                ++agg.excluded;
                continue;
            }
            for (int kind = 0; kind < kIndexKinds; ++kind) {
                const auto which = static_cast<IndexKind>(kind);
                auto& cell = agg.cell(which, rec.ci_group,
                                      agg.bucket_of(record_index(rec, which)));
                cell.md.add(rec.manhattan);
                cell.krd.add(rec.kendall_rescaled);
            }
        }
    };

    ordered_parallel_for<Block>(cfg.matrix_count, worker_count(), make, consume);
    return result;
}

DistributionResult run_distribution_study(const ExperimentConfig& cfg, const RecordSink& sink) {
    cfg.validate();
    if (cfg.ci_targets.size() != 1) {
        throw error(errc::bad_config,
                    "the distribution study takes exactly one CI target");
    }
    const int n = cfg.n;
    const int k_max = max_missing(n);

    DistributionResult result;
    {
        Rng rng(derive_seed(cfg.seed, kStreamCalib, 0));
        result.spread = calibrate_spread(n, cfg.ci_targets[0], rng, cfg.calib_samples);
    }

    DistributionAggregate& agg = result.aggregate;
    agg.k_max = k_max;
    agg.regular_cb.assign(k_max + 1, {});
    agg.irregular_cw.assign(k_max + 1, {});

    using Block = std::vector<ExperimentRecord>;
    const std::function<Block(int)> make = [&](int i) {
        Block block;
        block.reserve(2 * static_cast<std::size_t>(k_max + 1));
        Rng base_rng(derive_seed(cfg.seed, kStreamBase, i));
        const PCMatrix base = random_consistent(n, base_rng);
        const PriorityVector baseline = evm(base, cfg.tol, cfg.max_iter).vector;
        Rng disturb_rng(derive_seed(cfg.seed, kStreamDisturb, i, 0));
        const PCMatrix disturbed = disturb(base, result.spread, disturb_rng);
        const double ci = actual_ci(cfg, disturbed);
        for (int k = 0; k <= k_max; ++k) {
            const PCMatrix cb =
                PCMatrix::remove_pairs(disturbed, removal_pattern_regular(n, k));
            block.push_back(make_trial_record(cfg, i, 0, ci, k, RemovalScheme::regular_cb,
                                              cb, baseline));
            const PCMatrix cw =
                PCMatrix::remove_pairs(disturbed, removal_pattern_irregular(n, k));
            block.push_back(make_trial_record(cfg, i, 0, ci, k, RemovalScheme::irregular_cw,
                                              cw, baseline));
        }
        return block;
    };

    const std::function<void(int, const Block&)> consume = [&](int, const Block& block) {
        for (const ExperimentRecord& rec : block) {
            if (sink) sink(rec);
            ++agg.records;
            auto& cells = rec.scheme == RemovalScheme::regular_cb ? agg.regular_cb
                                                                  : agg.irregular_cw;
            auto& cell = cells[rec.k];
            if (rec.k == 0 && rec.scheme == RemovalScheme::regular_cb) {
                agg.ci.add(rec.ci_actual);
            }
            for (int kind = 0; kind < kIndexKinds; ++kind) {
                cell.index[kind].add(record_index(rec, static_cast<IndexKind>(kind)));
            }
            if (!rec.converged) {
                ++agg.excluded;
                ++cell.excluded;
                continue;
            }
            cell.md.add(rec.manhattan);
            cell.krd.add(rec.kendall_rescaled);
        }
    };

    ordered_parallel_for<Block>(cfg.matrix_count, worker_count(), make, consume);
    return result;
}

}  // namespace pcrank
