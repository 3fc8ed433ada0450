// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Three checks pin reference figures that turn out to be internally
// inconsistent (a spanning-tree cofactor slip, a rounded eigenvector entry,
// and a non-monotone tail the reference prose glosses over); they are
// asserted as stated and fail with an explanation rather than being
// loosened. Details sit next to each assertion.
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "pcrank/errors.hpp"
#include "pcrank/experiment_io.hpp"
#include "pcrank/graph.hpp"
#include "pcrank/indices.hpp"
#include "pcrank/matrix_io.hpp"
#include "pcrank/metrics.hpp"
#include "pcrank/montecarlo.hpp"
#include "pcrank/priority.hpp"
#include "pcrank/rng.hpp"

using namespace pcrank;

namespace {

class Criterion {
public:
    Criterion(int num, std::string name) : num_(num), name_(std::move(name)) {}

    void expect(bool condition, const std::string& what) {
        if (!condition) failures_.push_back(what);
    }

    bool finish() const {
        std::printf("[acceptance] criterion %d (%s): %s\n", num_, name_.c_str(),
                    failures_.empty() ? "PASS" : "FAIL");
        for (const std::string& f : failures_) {
            std::printf("[acceptance]     failed: %s\n", f.c_str());
        }
        std::fflush(stdout);
        return failures_.empty();
    }

private:
    int num_;
    std::string name_;
    std::vector<std::string> failures_;
};

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

PCMatrix example1() {
    return PCMatrix::validate({{1.0, 1.0, 2.0, 0.5},
                               {1.0, 1.0, 0.25, 8.0},
                               {0.5, 4.0, 1.0, 1.0},
                               {2.0, 0.125, 1.0, 1.0}});
}

PCMatrix example2() {
    return parse_matrix_text("1, 3, ?\n1/3, 1, 3\n?, 1/3, 1\n");
}

PCMatrix pattern_matrix(int n, const std::vector<std::pair<int, int>>& missing) {
    std::vector<std::optional<double>> upper(static_cast<std::size_t>(n) * (n - 1) / 2, 1.0);
    for (auto [i, j] : missing) upper[PCMatrix::pair_index(n, i, j)].reset();
    return PCMatrix::from_upper(n, upper);
}

/// C1 of the motivating example: a1 compared only with a2.
PCMatrix fixture_c1() { return pattern_matrix(5, {{0, 2}, {0, 3}, {0, 4}}); }

/// C2 of the motivating example: gaps spread over four alternatives.
PCMatrix fixture_c2() { return pattern_matrix(5, {{0, 2}, {0, 3}, {1, 3}}); }

std::string dbl(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct ScopedThreads {
    explicit ScopedThreads(const char* count) { setenv("PCRANK_THREADS", count, 1); }
    ~ScopedThreads() { unsetenv("PCRANK_THREADS"); }
};

}  // namespace

TEST_CASE("criterion 1: example 1 reproduction") {
    Criterion crit(1, "example 1: EVM eigenpair, ordinal order, GMM tie");
    const PCMatrix m = example1();

    const auto start = std::chrono::steady_clock::now();
    const EigenResult eig = evm(m);
    const PriorityVector g = gmm(m);
    const double ms = elapsed_ms(start);

    crit.expect(std::fabs(eig.lambda_max - 5.8875) <= 5e-4,
                "lambda_max " + dbl(eig.lambda_max) + " not within 5e-4 of 5.8875");
    const double want[] = {0.20976, 0.31796, 0.31406, 0.15822};
    for (int i = 0; i < 4; ++i) {
        crit.expect(std::fabs(eig.vector[i] - want[i]) <= 5e-5,
                    "vector[" + std::to_string(i) + "] = " + dbl(eig.vector[i]));
    }
    crit.expect(ordinal(eig.vector) == OrdinalVector{{3, 1, 2, 4}},
                "ordinal order is not a2,a3,a1,a4");
    crit.expect(g[1] == g[2], "GMM weights of a2 and a3 are not exactly equal");
    crit.expect(ms < 10.0, "runtime " + dbl(ms) + " ms >= 10 ms");
    CHECK(crit.finish());
}

TEST_CASE("criterion 2: example 2 reproduction") {
    Criterion crit(2, "example 2: Harker matrix and ranking");
    const PCMatrix m = example2();

    const auto start = std::chrono::steady_clock::now();
    const DenseMatrix h = harker_matrix(m);
    const EigenResult eig = harker_rank(m);
    const double ms = elapsed_ms(start);

    const double want_h[3][3] = {{2.0, 3.0, 0.0}, {1.0 / 3.0, 1.0, 3.0}, {0.0, 1.0 / 3.0, 2.0}};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            crit.expect(h.at(i, j) == want_h[i][j],
                        "harker matrix (" + std::to_string(i) + "," + std::to_string(j) +
                            ") = " + dbl(h.at(i, j)));
        }
    }
    // The reference pins [0.692, 0.230, 0.0769] +- 5e-4 per entry. The exact
    // Perron vector of B+Id is (9,3,1)/13 -- verified by (B+Id)(9,3,1)^T =
    // 3(9,3,1)^T -- whose middle entry 3/13 = 0.23077 sits 7.7e-4 from the
    // zero-padded 0.230 (a two-decimal rounding, 0.23, widened with a zero).
    // That entry is asserted as written and is expected to fail.
    const double want_w[] = {0.692, 0.230, 0.0769};
    for (int i = 0; i < 3; ++i) {
        crit.expect(std::fabs(eig.vector[i] - want_w[i]) <= 5e-4,
                    "harker weight[" + std::to_string(i) + "] = " + dbl(eig.vector[i]) +
                        " vs " + dbl(want_w[i]) + " +- 5e-4" +
                        (i == 1 ? " (exact value is 3/13 = 0.230769)" : ""));
    }
    crit.expect(ms < 10.0, "runtime " + dbl(ms) + " ms >= 10 ms");
    CHECK(crit.finish());

    // The implementation is nevertheless exact: the eigenpair matches the
    // algebraic solution to solver precision.
    CHECK(eig.lambda_max == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::fabs(eig.vector[0] - 9.0 / 13) < 1e-10);
    CHECK(std::fabs(eig.vector[1] - 3.0 / 13) < 1e-10);
    CHECK(std::fabs(eig.vector[2] - 1.0 / 13) < 1e-10);
}

TEST_CASE("criterion 3: C1/C2 index fixtures") {
    Criterion crit(3, "index fixtures C1 and C2");
    const PCMatrix c1 = fixture_c1();
    const PCMatrix c2 = fixture_c2();

    crit.expect(alpha_index(c1, 2.0) == 0.15, "IId_2(C1) != 0.15 exactly");
    crit.expect(alpha_index(c2, 2.0) == 0.125, "IId_2(C2) != 0.125 exactly");
    crit.expect(beta_index(c1, 1.0) == 0.225, "II_1(C1) != 0.225 exactly");
    crit.expect(beta_index(c2, 1.0) == 0.15, "II_1(C2) != 0.15 exactly");
    crit.expect(spanning_tree_count(c1) == 16, "NT(C1) != 16");
    // The reference figure for this fixture is 42. Brute-force edge
    // enumeration (criterion 5's oracle) gives 21; the 42 traces to a
    // cofactor slip (the l11 = 2 entry multiplied into the minor determinant
    // 21). The check is asserted as written and is expected to fail.
    crit.expect(spanning_tree_count(c2) == 42,
                "NT(C2) != 42 (enumeration gives " + spanning_tree_count(c2).str() +
                    "; 42 = l11 * minor is not the cofactor)");
    crit.expect(std::fabs(tree_index(c1) - 0.496) <= 5e-4, "TI(C1) = " + dbl(tree_index(c1)));
    crit.expect(std::fabs(tree_index(c2) - 0.305) <= 5e-4,
                "TI(C2) = " + dbl(tree_index(c2)) +
                    " (follows from NT(C2) = 21, not the stated 42)");
    crit.expect(compound_index(c1, 2.0, 1.0) == 0.15 * 0.225,
                "compound(C1) is not the exact product");
    crit.expect(compound_index(c2, 2.0, 1.0) == 0.125 * 0.15,
                "compound(C2) is not the exact product");
    CHECK(crit.finish());

    // The two sub-checks above that assert the stated NT(C2)/TI(C2) values
    // contradict the enumeration oracle; every other sub-check must hold.
    CHECK(alpha_index(c1, 2.0) == 0.15);
    CHECK(spanning_tree_count(c2) == 21);
    CHECK(oracles::brute_force_spanning_trees(5, ComparisonGraph(c2).edges()) == 21);
}

TEST_CASE("criterion 4: Kendall fixture and bubble-sort equivalence") {
    Criterion crit(4, "Kendall distance vs bubble-sort oracle");
    const OrdinalVector p{{1, 2, 4, 3}};
    const OrdinalVector q{{3, 4, 1, 2}};
    crit.expect(kendall(p, q) == 5, "K_d != 5");
    crit.expect(kendall_rescaled(p, q) == 5.0 / 6.0, "K_rd != 5/6 exactly");

    long long checked = 0;
    bool all_match = true;
    for (int n = 2; n <= 6 && all_match; ++n) {
        const auto perms = oracles::all_permutations(n);
        for (const auto& a : perms) {
            for (const auto& b : perms) {
                const int got = kendall(OrdinalVector{a}, OrdinalVector{b});
                if (got != oracles::bubble_sort_swaps(a, b)) {
                    all_match = false;
                    break;
                }
                ++checked;
            }
            if (!all_match) break;
        }
    }
    crit.expect(all_match, "a permutation pair disagreed with the bubble-sort count");
    crit.expect(checked >= 518400, "not all permutation pairs up to n=6 were checked");
    CHECK(crit.finish());
}

TEST_CASE("criterion 5: spanning-tree counter vs enumeration oracle") {
    Criterion crit(5, "spanning-tree counts: enumeration and Cayley");
    Rng rng(50505);
    int mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_below(5));  // 3..7
        // Random spanning tree first, then extra edges: always connected.
        std::vector<std::pair<int, int>> missing_candidates;
        std::vector<std::optional<double>> upper(static_cast<std::size_t>(n) * (n - 1) / 2);
        for (int v = 1; v < n; ++v) {
            const int parent = static_cast<int>(rng.uniform_below(v));
            upper[PCMatrix::pair_index(n, parent, v)] = 1.0;
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                auto& cell = upper[PCMatrix::pair_index(n, i, j)];
                if (!cell.has_value() && rng.uniform() < 0.5) cell = 1.0;
            }
        }
        const PCMatrix m = PCMatrix::from_upper(n, upper);
        const BigInt got = spanning_tree_count(m);
        const std::uint64_t want =
            oracles::brute_force_spanning_trees(n, ComparisonGraph(m).edges());
        if (got != want) ++mismatches;
    }
    crit.expect(mismatches == 0,
                std::to_string(mismatches) + " of 500 random graphs disagreed");

    for (int n = 3; n <= 9; ++n) {
        BigInt cayley = 1;
        for (int p = 0; p < n - 2; ++p) cayley *= n;
        const PCMatrix complete = pattern_matrix(n, {});
        crit.expect(spanning_tree_count(complete) == cayley,
                    "complete K" + std::to_string(n) + " count != n^(n-2)");
    }
    CHECK(crit.finish());
}

TEST_CASE("criterion 6: consistency null theorem") {
    Criterion crit(6, "consistent data: ranking invariant under any irreducible removal");
    const int n = 9;
    const auto start = std::chrono::steady_clock::now();
    Rng rng(606060);
    int failures = 0;
    for (int matrix_id = 0; matrix_id < 200; ++matrix_id) {
        const PCMatrix complete = random_consistent(n, rng);
        const PriorityVector base = evm(complete).vector;
        for (int trial = 0; trial < 50; ++trial) {
            const int k = 1 + static_cast<int>(rng.uniform_below(max_missing(n)));
            const PCMatrix cut = random_irreducible_incomplete(complete, k, rng);
            const EigenResult eig = harker_rank(cut);
            const auto [md, krd] = ranking_distance(eig.vector, base);
            if (!(md < 1e-8) || krd != 0.0) ++failures;
        }
    }
    const double seconds = elapsed_ms(start) / 1000.0;
    crit.expect(failures == 0,
                std::to_string(failures) + " of 10000 trials moved the ranking");
    crit.expect(seconds < 60.0, "runtime " + dbl(seconds) + " s >= 60 s single-threaded");
    CHECK(crit.finish());
}

namespace {

bool nondecreasing_with_se(const std::vector<Welford>& cells, std::string axis,
                           Criterion& crit) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
        if (cells[i].count == 0 || cells[i + 1].count == 0) continue;
        const double allowance =
            std::sqrt(cells[i].se() * cells[i].se() + cells[i + 1].se() * cells[i + 1].se());
        if (cells[i + 1].mean < cells[i].mean - allowance) {
            crit.expect(false, axis + " decreases at step " + std::to_string(i) + ": " +
                                   dbl(cells[i].mean) + " -> " + dbl(cells[i + 1].mean) +
                                   " (allowance " + dbl(allowance) + ")");
            ok = false;
        }
    }
    return ok;
}

}  // namespace

TEST_CASE("criterion 7: distribution-study trends at CI 0.1") {
    Criterion crit(7, "regular vs irregular removal, n=9, 1000 matrices");
    ScopedThreads threads("8");

    ExperimentConfig cfg;
    cfg.n = 9;
    cfg.matrix_count = 1000;
    cfg.ci_targets = {0.1};
    cfg.seed = 70707;
    cfg.calib_samples = 250;

    const auto start = std::chrono::steady_clock::now();
    const DistributionResult result = run_distribution_study(cfg);
    const double seconds = elapsed_ms(start) / 1000.0;
    const DistributionAggregate& agg = result.aggregate;
    const int k_max = agg.k_max;

    crit.expect(std::fabs(agg.ci.mean - 0.1) <= 0.01,
                "realized CI_avg " + dbl(agg.ci.mean) + " outside 0.1 +- 0.01");

    // (a) mean distances nondecreasing in k, one standard error allowance.
    // The regular curve satisfies this throughout. The irregular curve is
    // genuinely non-monotone near k_max: both schemes remove the same full
    // set at k = 28, so the curves must meet there, and the irregular
    // curve's peak (around k = 25) lies above that common endpoint. The
    // dips are structural, reproduce under independent reimplementation,
    // and exceed any standard-error allowance, so the affected steps fail
    // as written.
    for (const auto* cells : {&agg.regular_cb, &agg.irregular_cw}) {
        std::vector<Welford> md;
        std::vector<Welford> krd;
        for (const auto& cell : *cells) {
            md.push_back(cell.md);
            krd.push_back(cell.krd);
        }
        const char* which = cells == &agg.regular_cb ? "cb" : "cw";
        nondecreasing_with_se(md, std::string("mean M_d (") + which + ")", crit);
        nondecreasing_with_se(krd, std::string("mean K_rd (") + which + ")", crit);
    }

    // (b) irregular exceeds regular by >= 20% once k >= 13. The two schemes
    // remove the identical full set at k = k_max, so the comparison covers
    // the range where the patterns differ; the endpoint is checked for
    // exact coincidence instead.
    for (int k = 13; k < k_max; ++k) {
        const double md_ratio = agg.irregular_cw[k].md.mean / agg.regular_cb[k].md.mean;
        const double krd_ratio = agg.irregular_cw[k].krd.mean / agg.regular_cb[k].krd.mean;
        crit.expect(md_ratio >= 1.2,
                    "M_d ratio at k=" + std::to_string(k) + " is " + dbl(md_ratio));
        crit.expect(krd_ratio >= 1.2,
                    "K_rd ratio at k=" + std::to_string(k) + " is " + dbl(krd_ratio));
    }
    crit.expect(agg.irregular_cw[k_max].md.mean == agg.regular_cb[k_max].md.mean,
                "schemes should coincide at k = k_max");

    // (c) all four index curves nondecreasing in k, cw >= cb pointwise.
    for (int kind = 0; kind < kIndexKinds; ++kind) {
        for (int k = 0; k <= k_max; ++k) {
            const double cw = agg.irregular_cw[k].index[kind].mean;
            const double cb = agg.regular_cb[k].index[kind].mean;
            crit.expect(cw >= cb - 1e-12,
                        std::string(index_kind_name(static_cast<IndexKind>(kind))) +
                            " cw < cb at k=" + std::to_string(k));
            if (k > 0) {
                crit.expect(agg.irregular_cw[k].index[kind].mean >=
                                agg.irregular_cw[k - 1].index[kind].mean - 1e-12,
                            std::string(index_kind_name(static_cast<IndexKind>(kind))) +
                                " (cw) decreases at k=" + std::to_string(k));
                crit.expect(agg.regular_cb[k].index[kind].mean >=
                                agg.regular_cb[k - 1].index[kind].mean - 1e-12,
                            std::string(index_kind_name(static_cast<IndexKind>(kind))) +
                                " (cb) decreases at k=" + std::to_string(k));
            }
        }
    }

    crit.expect(seconds < 600.0, "runtime " + dbl(seconds) + " s >= 10 min");
    crit.expect(agg.excluded == 0, std::to_string(agg.excluded) + " trials did not converge");
    CHECK(crit.finish());
}

TEST_CASE("criterion 8: sensitivity-study bands") {
    Criterion crit(8, "sensitivity bands over the CI ladder");
    ScopedThreads threads("8");

    ExperimentConfig cfg;
    cfg.n = 9;
    cfg.matrix_count = 200;
    cfg.ci_targets = {0.001, 0.02, 0.05, 0.11, 0.21, 0.385};
    cfg.seed = 80808;
    cfg.calib_samples = 200;
    cfg.buckets = 10;

    const SensitivityResult result = run_sensitivity_study(cfg);
    const SensitivityAggregate& agg = result.aggregate;
    const int top_group = agg.groups - 1;

    // Realized CI level sanity at both ends of the ladder; the calibration
    // contract allows max(0.002, 5% relative) plus fresh-sample noise.
    crit.expect(std::fabs(agg.group_ci[0].mean - 0.001) <= 0.0025,
                "low group CI " + dbl(agg.group_ci[0].mean));
    crit.expect(std::fabs(agg.group_ci[top_group].mean - 0.385) <= 0.04,
                "top group CI " + dbl(agg.group_ci[top_group].mean));

    // (i) Manhattan band at the top CI level, maximal-incompleteness bucket.
    {
        int best = -1;
        for (int b = 0; b < agg.buckets; ++b) {
            if (agg.cell(IndexKind::iid_alpha, top_group, b).md.count > 0) best = b;
        }
        crit.expect(best >= 0, "no occupied incompleteness bucket at the top CI level");
        if (best >= 0) {
            const double mean_md = agg.cell(IndexKind::iid_alpha, top_group, best).md.mean;
            crit.expect(mean_md >= 0.15 && mean_md <= 0.9,
                        "mean M_d " + dbl(mean_md) + " outside [0.15, 0.9]");
        }
    }

    // (ii) Kendall level for near-consistent matrices.
    {
        Welford pooled;
        for (int b = 0; b < agg.buckets; ++b) {
            const auto& cell = agg.cell(IndexKind::iid_alpha, 0, b);
            if (cell.krd.count > 0) {
                pooled.count += cell.krd.count;
                pooled.mean += (cell.krd.mean - pooled.mean) * cell.krd.count / pooled.count;
            }
        }
        crit.expect(pooled.mean < 0.04, "mean K_rd at CI 0.001 is " + dbl(pooled.mean));
    }

    // (iii) monotone along the CI axis for every index and bucket.
    for (int kind = 0; kind < kIndexKinds; ++kind) {
        for (int b = 0; b < agg.buckets; ++b) {
            std::vector<Welford> md;
            std::vector<Welford> krd;
            for (int g = 0; g < agg.groups; ++g) {
                const auto& cell = agg.cell(static_cast<IndexKind>(kind), g, b);
                md.push_back(cell.md);
                krd.push_back(cell.krd);
            }
            const std::string tag = std::string(index_kind_name(static_cast<IndexKind>(kind))) +
                                    " bucket " + std::to_string(b);
            nondecreasing_with_se(md, "M_d along CI, " + tag, crit);
            nondecreasing_with_se(krd, "K_rd along CI, " + tag, crit);
        }
    }

    // (iv) monotone along each incompleteness axis within every CI group,
    // skipping unoccupied buckets.
    for (int kind = 0; kind < kIndexKinds; ++kind) {
        for (int g = 0; g < agg.groups; ++g) {
            std::vector<Welford> md;
            std::vector<Welford> krd;
            for (int b = 0; b < agg.buckets; ++b) {
                const auto& cell = agg.cell(static_cast<IndexKind>(kind), g, b);
                if (cell.md.count == 0) continue;
                md.push_back(cell.md);
                krd.push_back(cell.krd);
            }
            const std::string tag = std::string(index_kind_name(static_cast<IndexKind>(kind))) +
                                    " group " + std::to_string(g);
            nondecreasing_with_se(md, "M_d along buckets, " + tag, crit);
            nondecreasing_with_se(krd, "K_rd along buckets, " + tag, crit);
        }
    }

    crit.expect(agg.excluded == 0, std::to_string(agg.excluded) + " trials did not converge");
    CHECK(crit.finish());
}

TEST_CASE("criterion 9: property suites") {
    Criterion crit(9, "monotonicity, invariances, determinism");

    // (a) single-removal monotonicity over 1000 random chains, n <= 9.
    {
        Rng rng(909090);
        int violations = 0;
        for (int chain = 0; chain < 1000; ++chain) {
            const int n = 3 + static_cast<int>(rng.uniform_below(7));
            PCMatrix m = pattern_matrix(n, {});
            double pa = alpha_index(m, 1.5);
            double pb = beta_index(m, 1.0);
            double pt = tree_index(m);
            BigInt pnt = spanning_tree_count(m);
            std::vector<std::pair<int, int>> pool = ComparisonGraph(m).edges();
            const int removals = 1 + static_cast<int>(rng.uniform_below(pool.size()));
            for (int r = 0; r < removals; ++r) {
                const std::size_t pick = rng.uniform_below(pool.size());
                m = PCMatrix::remove_pairs(m, {pool[pick]});
                pool.erase(pool.begin() + pick);
                const double a = alpha_index(m, 1.5);
                const double b = beta_index(m, 1.0);
                const double t = tree_index(m);
                const BigInt nt = spanning_tree_count(m);
                if (a < pa || b < pb || t < pt - 1e-14 || nt > pnt) ++violations;
                pa = a;
                pb = b;
                pt = t;
                pnt = nt;
            }
        }
        crit.expect(violations == 0, std::to_string(violations) + " monotonicity violations");
    }

    // (b) permutation invariance of all indices and both distances.
    {
        Rng rng(919191);
        bool indices_ok = true;
        bool distances_ok = true;
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 3 + static_cast<int>(rng.uniform_below(6));
            std::vector<std::optional<double>> upper(static_cast<std::size_t>(n) * (n - 1) / 2);
            for (auto& cell : upper) {
                if (rng.uniform() < 0.75) cell = rng.log_uniform(1.0 / 9.0, 9.0);
            }
            const PCMatrix m = PCMatrix::from_upper(n, upper);

            std::vector<int> perm(n);
            for (int i = 0; i < n; ++i) perm[i] = i;
            for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_below(i + 1)]);

            RawGrid grid(n, std::vector<std::optional<double>>(n));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) grid[perm[i]][perm[j]] = m.cell(i, j);
            }
            const PCMatrix pm = PCMatrix::validate(grid);
            if (alpha_index(m, 1.5) != alpha_index(pm, 1.5) ||
                beta_index(m, 1.0) != beta_index(pm, 1.0) ||
                spanning_tree_count(m) != spanning_tree_count(pm) ||
                tree_index(m) != tree_index(pm)) {
                indices_ok = false;
            }

            std::vector<double> w(n);
            std::vector<double> u(n);
            for (int i = 0; i < n; ++i) {
                w[i] = rng.log_uniform(0.01, 1.0);
                u[i] = rng.log_uniform(0.01, 1.0);
            }
            std::vector<double> wp(n);
            std::vector<double> up(n);
            for (int i = 0; i < n; ++i) {
                wp[perm[i]] = w[i];
                up[perm[i]] = u[i];
            }
            const auto [md, krd] = ranking_distance(PriorityVector::normalized(w),
                                                    PriorityVector::normalized(u));
            const auto [mdp, krdp] = ranking_distance(PriorityVector::normalized(wp),
                                                      PriorityVector::normalized(up));
            if (md != mdp || krd != krdp) distances_ok = false;
        }
        crit.expect(indices_ok, "an index changed under permutation");
        crit.expect(distances_ok, "a distance changed under permutation");
    }

    // (c) indices never depend on the judgment values.
    {
        Rng rng(929292);
        bool ok = true;
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 3 + static_cast<int>(rng.uniform_below(7));
            std::vector<std::optional<double>> a(static_cast<std::size_t>(n) * (n - 1) / 2);
            std::vector<std::optional<double>> b(a.size());
            for (std::size_t p = 0; p < a.size(); ++p) {
                if (rng.uniform() < 0.7) {
                    a[p] = rng.log_uniform(1.0 / 9.0, 9.0);
                    b[p] = rng.log_uniform(1.0 / 9.0, 9.0);
                }
            }
            const PCMatrix ma = PCMatrix::from_upper(n, a);
            const PCMatrix mb = PCMatrix::from_upper(n, b);
            if (alpha_index(ma, 1.5) != alpha_index(mb, 1.5) ||
                beta_index(ma, 1.0) != beta_index(mb, 1.0) ||
                spanning_tree_count(ma) != spanning_tree_count(mb) ||
                tree_index(ma) != tree_index(mb) ||
                compound_index(ma, 1.5, 1.0) != compound_index(mb, 1.5, 1.0)) {
                ok = false;
            }
        }
        crit.expect(ok, "an index depended on judgment values");
    }

    // (d) byte-identical experiment CSVs for 1 vs 8 workers.
    {
        ExperimentConfig cfg;
        cfg.n = 7;
        cfg.matrix_count = 24;
        cfg.ci_targets = {0.09};
        cfg.seed = 939393;
        cfg.calib_samples = 80;

        const auto run_csv = [&](const char* threads) {
            setenv("PCRANK_THREADS", threads, 1);
            std::ostringstream out;
            RecordCsvWriter writer(out);
            run_distribution_study(cfg, [&](const ExperimentRecord& r) { writer.write(r); });
            unsetenv("PCRANK_THREADS");
            return out.str();
        };
        const std::string serial = run_csv("1");
        const std::string parallel = run_csv("8");
        crit.expect(serial == parallel, "worker count changed the record CSV");
        crit.expect(serial.size() > 10000, "record CSV suspiciously small");

        ExperimentConfig scfg;
        scfg.n = 6;
        scfg.matrix_count = 10;
        scfg.ci_targets = {0.02, 0.1};
        scfg.seed = 949494;
        scfg.calib_samples = 60;
        const auto run_sens_csv = [&](const char* threads) {
            setenv("PCRANK_THREADS", threads, 1);
            std::ostringstream out;
            RecordCsvWriter writer(out);
            run_sensitivity_study(scfg, [&](const ExperimentRecord& r) { writer.write(r); });
            unsetenv("PCRANK_THREADS");
            return out.str();
        };
        crit.expect(run_sens_csv("1") == run_sens_csv("8"),
                    "worker count changed the sensitivity record CSV");
    }

    CHECK(crit.finish());
}
