// pcrank: rankings and data-quality indices for pairwise comparison matrices.
//
// Subcommands: rank, indices, check, experiment-sensitivity,
// experiment-distribution. Exit codes: 0 ok, 1 parse/config error, 2 method
// contract violation, 3 not rankable, 4 calibration failure.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcrank/errors.hpp"
#include "pcrank/experiment_io.hpp"
#include "pcrank/graph.hpp"
#include "pcrank/indices.hpp"
#include "pcrank/matrix_io.hpp"
#include "pcrank/metrics.hpp"
#include "pcrank/montecarlo.hpp"
#include "pcrank/priority.hpp"

namespace {

using namespace pcrank;

std::string fixed6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

/// One settable key in a "key=value" config file. Applied only when the
/// matching flag was not given, so flags > config > defaults.
struct ConfigBinding {
    std::string key;
    std::string flag;  // corresponding long option
    std::function<void(const std::string&)> apply;
};

double config_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw error(errc::bad_config, "config key \"" + key + "\" has non-numeric value \"" +
                                          value + "\"");
    }
}

long long config_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw error(errc::bad_config, "config key \"" + key + "\" has non-integer value \"" +
                                          value + "\"");
    }
}

std::string trim_ws(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

void apply_config_file(const CLI::App* sub, const std::string& path,
                       const std::vector<ConfigBinding>& bindings) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) {
        throw error(errc::bad_config, "cannot read config file \"" + path + "\"");
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim_ws(line);
        if (text.empty() || text[0] == '#') continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw error(errc::bad_config, "config line " + std::to_string(line_no) +
                                              " is not key=value: \"" + text + "\"");
        }
        const std::string key = trim_ws(text.substr(0, eq));
        const std::string value = trim_ws(text.substr(eq + 1));
        const auto binding = std::find_if(bindings.begin(), bindings.end(),
                                          [&](const ConfigBinding& b) { return b.key == key; });
        if (binding == bindings.end()) {
            throw error(errc::bad_config, "unknown config key \"" + key + "\"");
        }
        if (sub->count(binding->flag) == 0) binding->apply(value);
    }
}

std::string compact6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string alt_name(int i) { return "a" + std::to_string(i + 1); }

std::string ranking_string(const PriorityVector& w) {
    const OrdinalVector ord = ordinal(w);
    std::vector<int> order(w.size());
    for (int i = 0; i < w.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ord[a] != ord[b]) return ord[a] < ord[b];
        return a < b;
    });
    std::string out;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        if (pos > 0) {
            out += ord[order[pos]] == ord[order[pos - 1]] ? " = " : " > ";
        }
        out += alt_name(order[pos]);
    }
    return out;
}

std::string join_alts(const std::vector<int>& ids) {
    std::string out = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0) out += ",";
        out += alt_name(ids[i]);
    }
    return out + "}";
}

/// Names vertices inside and outside the component of a1 when the
/// comparison graph is disconnected.
std::string disconnected_detail(const PCMatrix& m) {
    const ComparisonGraph g(m);
    std::vector<int> inside = g.component_of(0);
    std::sort(inside.begin(), inside.end());
    std::vector<char> mark(m.size(), 0);
    for (int v : inside) mark[v] = 1;
    std::vector<int> outside;
    for (int v = 0; v < m.size(); ++v) {
        if (!mark[v]) outside.push_back(v);
    }
    return "component " + join_alts(inside) + " has no comparisons with " + join_alts(outside);
}

int print_error(const error& e) {
    std::cerr << "error[" << e.code_name() << "]: " << e.what() << "\n";
    switch (e.code()) {
        case errc::parse_error:
        case errc::bad_config:
        case errc::non_square:
        case errc::diagonal_not_one:
        case errc::non_positive_entry:
        case errc::reciprocity_violation:
            return 1;
        case errc::calibration_failed:
            return 4;
        default:
            return 2;  // method contract violations
    }
}

struct RankOptions {
    std::string input;
    std::string method = "evm";
    double tol = kDefaultEvmTol;
    int max_iter = kDefaultEvmMaxIter;
    std::string config_path;

    std::vector<ConfigBinding> bindings() {
        return {
            {"method", "--method", [this](const std::string& v) {
                 if (v != "evm" && v != "gmm" && v != "harker") {
                     throw error(errc::bad_config, "config method must be evm|gmm|harker");
                 }
                 method = v;
             }},
            {"tol", "--tol", [this](const std::string& v) { tol = config_double("tol", v); }},
            {"max_iter", "--max-iter",
             [this](const std::string& v) {
                 max_iter = static_cast<int>(config_int("max_iter", v));
             }},
        };
    }
};

int cmd_rank(const RankOptions& opt) {
    if (!(opt.tol > 0.0) || opt.max_iter < 1) {
        throw error(errc::bad_config, "tol must be positive and max-iter >= 1");
    }
    const PCMatrix m = parse_matrix_file(opt.input);
    std::cout << "method: " << opt.method << "\n";
    std::cout << "n: " << m.size() << "\n";

    PriorityVector w = [&] {
        if (opt.method == "gmm") return gmm(m);
        if (opt.method == "harker") {
            if (!is_irreducible(m)) {
                throw error(errc::not_irreducible, disconnected_detail(m));
            }
            const EigenResult eig = harker_rank(m, opt.tol, opt.max_iter);
            std::cout << "lambda_max: " << fixed6(eig.lambda_max) << "\n";
            if (m.complete()) {
                std::cout << "CI: " << fixed6(consistency_index(m, eig)) << "\n";
            }
            return eig.vector;
        }
        // evm requires a complete matrix
        const EigenResult eig = evm(m, opt.tol, opt.max_iter);
        std::cout << "lambda_max: " << fixed6(eig.lambda_max) << "\n";
        std::cout << "CI: " << fixed6(consistency_index(m, eig)) << "\n";
        return eig.vector;
    }();

    for (int i = 0; i < w.size(); ++i) {
        std::cout << "w(" << alt_name(i) << ") = " << fixed6(w[i]) << "\n";
    }
    std::cout << "ranking: " << ranking_string(w) << "\n";
    return 0;
}

struct IndicesOptions {
    std::string input;
    double alpha = kDefaultAlpha;
    double beta = kDefaultBeta;
    std::string csv_path;
    std::string config_path;

    std::vector<ConfigBinding> bindings() {
        return {
            {"alpha", "--alpha",
             [this](const std::string& v) { alpha = config_double("alpha", v); }},
            {"beta", "--beta", [this](const std::string& v) { beta = config_double("beta", v); }},
        };
    }
};

int cmd_indices(const IndicesOptions& opt) {
    const PCMatrix m = parse_matrix_file(opt.input);
    const IndexReport rep = report(m, opt.alpha, opt.beta);

    std::cout << "n = " << rep.n << "\n";
    std::cout << "missing = " << rep.missing << "\n";
    std::cout << "alpha = " << compact6(rep.alpha) << "\n";
    std::cout << "beta = " << compact6(rep.beta) << "\n";
    if (rep.ci.has_value()) {
        std::cout << "ci = " << compact6(*rep.ci) << "\n";
    } else {
        std::cout << "ci = n/a (incomplete matrix)\n";
    }
    std::cout << "iid_alpha = " << compact6(rep.iid_alpha) << "\n";
    std::cout << "ii_beta = " << compact6(rep.ii_beta) << "\n";
    std::cout << "spanning_trees = " << rep.spanning_trees.str() << "\n";
    if (rep.tree.has_value()) {
        std::cout << "tree_index = " << compact6(*rep.tree) << "\n";
    } else {
        std::cout << "tree_index = n/a (undefined for n = 2)\n";
    }
    std::cout << "compound = " << compact6(rep.compound) << "\n";

    if (!opt.csv_path.empty()) {
        std::ofstream out(opt.csv_path, std::ios::binary);
        if (!out) {
            throw error(errc::bad_config, "cannot open \"" + opt.csv_path + "\" for writing");
        }
        out << "n,missing,ci,alpha,beta,iid_alpha,ii_beta,spanning_trees,tree_index,compound\n";
        out << rep.n << ',' << rep.missing << ','
            << (rep.ci ? csv_number(*rep.ci) : std::string{}) << ',' << csv_number(rep.alpha)
            << ',' << csv_number(rep.beta) << ',' << csv_number(rep.iid_alpha) << ','
            << csv_number(rep.ii_beta) << ',' << rep.spanning_trees.str() << ','
            << (rep.tree ? csv_number(*rep.tree) : std::string{}) << ','
            << csv_number(rep.compound) << '\n';
    }
    return 0;
}

struct CheckOptions {
    std::string input;
    double alpha = kDefaultAlpha;
    std::string config_path;

    std::vector<ConfigBinding> bindings() {
        return {
            {"alpha", "--alpha",
             [this](const std::string& v) { alpha = config_double("alpha", v); }},
        };
    }
};

int cmd_check(const CheckOptions& opt) {
    const PCMatrix m = parse_matrix_file(opt.input);
    const bool rankable = is_irreducible(m);
    if (rankable) {
        std::cout << "rankable\n";
    } else {
        std::cout << "not rankable: " << disconnected_detail(m) << "\n";
    }
    if (m.size() >= 3) {
        const double idx = alpha_index(m, opt.alpha);
        const double bound = alpha_rankability_bound(m.size(), opt.alpha);
        if (idx >= bound - 1e-12) {
            std::cout << "warning: alpha-index " << compact6(idx)
                      << " reaches the rankability bound " << compact6(bound)
                      << " (necessary condition for a ranking)\n";
        }
        if (tree_index(m) == 1.0) {
            std::cout << "warning: tree index is 1; no spanning tree exists\n";
        }
    }
    return rankable ? 0 : 3;
}

struct ExperimentOptions {
    ExperimentConfig cfg;
    std::vector<double> ci_targets;  // sensitivity: empty means default ladder
    double ci = 0.1;                 // distribution target
    std::string out_prefix;
    bool no_records = false;
    std::string config_path;

    std::vector<ConfigBinding> bindings() {
        return {
            {"n", "--n", [this](const std::string& v) {
                 cfg.n = static_cast<int>(config_int("n", v));
             }},
            {"matrix_count", "--matrix-count",
             [this](const std::string& v) {
                 cfg.matrix_count = static_cast<int>(config_int("matrix_count", v));
             }},
            {"alpha", "--alpha",
             [this](const std::string& v) { cfg.alpha = config_double("alpha", v); }},
            {"beta", "--beta",
             [this](const std::string& v) { cfg.beta = config_double("beta", v); }},
            {"seed", "--seed",
             [this](const std::string& v) {
                 cfg.seed = static_cast<std::uint64_t>(config_int("seed", v));
             }},
            {"calib_samples", "--calib-samples",
             [this](const std::string& v) {
                 cfg.calib_samples = static_cast<int>(config_int("calib_samples", v));
             }},
            {"buckets", "--buckets",
             [this](const std::string& v) {
                 cfg.buckets = static_cast<int>(config_int("buckets", v));
             }},
            {"tol", "--tol",
             [this](const std::string& v) { cfg.tol = config_double("tol", v); }},
            {"max_iter", "--max-iter",
             [this](const std::string& v) {
                 cfg.max_iter = static_cast<int>(config_int("max_iter", v));
             }},
            {"ci", "--ci", [this](const std::string& v) { ci = config_double("ci", v); }},
            {"out", "--out", [this](const std::string& v) { out_prefix = v; }},
        };
    }
};

void print_sensitivity_summary(const ExperimentConfig& cfg, const SensitivityResult& result) {
    const auto& agg = result.aggregate;
    std::printf("sensitivity study: n=%d matrices=%d groups=%d records=%lld excluded=%lld\n",
                cfg.n, cfg.matrix_count, agg.groups, agg.records, agg.excluded);
    std::printf("%8s %10s %10s %12s %12s\n", "group", "ci_target", "ci_mean", "mean_Md",
                "mean_Krd");
    for (int g = 0; g < agg.groups; ++g) {
        // Overall distance means per group, pooled from the iid_alpha surface.
        Welford md;
        Welford krd;
        for (int b = 0; b < agg.buckets; ++b) {
            const auto& cell = agg.cell(IndexKind::iid_alpha, g, b);
            if (cell.md.count > 0) {
                md.count += cell.md.count;
                md.mean += (cell.md.mean - md.mean) * cell.md.count / md.count;
                krd.count += cell.krd.count;
                krd.mean += (cell.krd.mean - krd.mean) * cell.krd.count / krd.count;
            }
        }
        std::printf("%8d %10.6g %10.6g %12.6g %12.6g\n", g, cfg.ci_targets[g],
                    agg.group_ci[g].mean, md.mean, krd.mean);
    }
}

void print_distribution_summary(const ExperimentConfig& cfg, const DistributionResult& result) {
    const auto& agg = result.aggregate;
    std::printf("distribution study: n=%d matrices=%d ci_mean=%.6g spread=%.6g records=%lld "
                "excluded=%lld\n",
                cfg.n, cfg.matrix_count, agg.ci.mean, result.spread, agg.records, agg.excluded);
    std::printf("%4s %12s %12s %12s %12s\n", "k", "Md_cb", "Md_cw", "Krd_cb", "Krd_cw");
    for (int k = 0; k <= agg.k_max; ++k) {
        std::printf("%4d %12.6g %12.6g %12.6g %12.6g\n", k, agg.regular_cb[k].md.mean,
                    agg.irregular_cw[k].md.mean, agg.regular_cb[k].krd.mean,
                    agg.irregular_cw[k].krd.mean);
    }
}

/// Opens <prefix>_records.csv unless records are disabled; returns the sink.
struct RecordOutput {
    std::ofstream stream;
    std::unique_ptr<RecordCsvWriter> writer;

    RecordSink open(const std::string& prefix, bool disabled) {
        if (disabled) return {};
        const std::string path = prefix + "_records.csv";
        stream.open(path, std::ios::binary);
        if (!stream) {
            throw error(errc::bad_config, "cannot open \"" + path + "\" for writing");
        }
        writer = std::make_unique<RecordCsvWriter>(stream);
        return [this](const ExperimentRecord& r) { writer->write(r); };
    }
};

int cmd_experiment_sensitivity(ExperimentOptions& opt) {
    opt.cfg.ci_targets = opt.ci_targets.empty() ? default_ci_ladder() : opt.ci_targets;
    opt.cfg.scheme = RemovalScheme::random_irreducible;
    opt.cfg.validate();

    RecordOutput records;
    const RecordSink sink = records.open(opt.out_prefix, opt.no_records);
    const SensitivityResult result = run_sensitivity_study(opt.cfg, sink);

    const std::string agg_path = opt.out_prefix + "_aggregate.csv";
    std::ofstream agg_out(agg_path, std::ios::binary);
    if (!agg_out) {
        throw error(errc::bad_config, "cannot open \"" + agg_path + "\" for writing");
    }
    write_sensitivity_csv(agg_out, opt.cfg, result);
    print_sensitivity_summary(opt.cfg, result);
    return 0;
}

int cmd_experiment_distribution(ExperimentOptions& opt) {
    opt.cfg.ci_targets = {opt.ci};
    opt.cfg.validate();

    RecordOutput records;
    const RecordSink sink = records.open(opt.out_prefix, opt.no_records);
    const DistributionResult result = run_distribution_study(opt.cfg, sink);

    const std::string agg_path = opt.out_prefix + "_aggregate.csv";
    std::ofstream agg_out(agg_path, std::ios::binary);
    if (!agg_out) {
        throw error(errc::bad_config, "cannot open \"" + agg_path + "\" for writing");
    }
    write_distribution_csv(agg_out, result);
    print_distribution_summary(opt.cfg, result);
    return 0;
}

void add_experiment_flags(CLI::App* sub, ExperimentOptions& opt) {
    sub->add_option("--n", opt.cfg.n, "matrix order")->capture_default_str();
    sub->add_option("--matrix-count", opt.cfg.matrix_count, "number of base matrices")
        ->capture_default_str();
    sub->add_option("--alpha", opt.cfg.alpha, "alpha-index parameter")->capture_default_str();
    sub->add_option("--beta", opt.cfg.beta, "beta-index parameter")->capture_default_str();
    sub->add_option("--seed", opt.cfg.seed, "master seed")->capture_default_str();
    sub->add_option("--calib-samples", opt.cfg.calib_samples,
                    "matrices per calibration evaluation")
        ->capture_default_str();
    sub->add_option("--tol", opt.cfg.tol, "eigensolver tolerance")->capture_default_str();
    sub->add_option("--max-iter", opt.cfg.max_iter, "eigensolver iteration cap")
        ->capture_default_str();
    sub->add_flag("--no-records", opt.no_records, "skip the per-record CSV");
    sub->add_option("--config", opt.config_path,
                    "key=value config file (flags take precedence)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rankings and data-quality indices for pairwise comparison matrices"};
    app.require_subcommand(1);

    RankOptions rank_opt;
    CLI::App* rank_cmd = app.add_subcommand("rank", "derive a priority vector from a matrix file");
    rank_cmd->add_option("--input,-i", rank_opt.input, "matrix CSV file")->required();
    rank_cmd->add_option("--method,-m", rank_opt.method, "ranking method")
        ->check(CLI::IsMember({"evm", "gmm", "harker"}))
        ->capture_default_str();
    rank_cmd->add_option("--tol", rank_opt.tol, "eigensolver tolerance")->capture_default_str();
    rank_cmd->add_option("--max-iter", rank_opt.max_iter, "eigensolver iteration cap")
        ->capture_default_str();
    rank_cmd->add_option("--config", rank_opt.config_path,
                         "key=value config file (flags take precedence)");

    IndicesOptions idx_opt;
    CLI::App* idx_cmd =
        app.add_subcommand("indices", "inconsistency and incompleteness indices of a matrix");
    idx_cmd->add_option("--input,-i", idx_opt.input, "matrix CSV file")->required();
    idx_cmd->add_option("--alpha", idx_opt.alpha, "alpha-index parameter")->capture_default_str();
    idx_cmd->add_option("--beta", idx_opt.beta, "beta-index parameter")->capture_default_str();
    idx_cmd->add_option("--csv", idx_opt.csv_path, "also write a one-row CSV to this path");
    idx_cmd->add_option("--config", idx_opt.config_path,
                        "key=value config file (flags take precedence)");

    CheckOptions check_opt;
    CLI::App* check_cmd = app.add_subcommand("check", "test whether a matrix can be ranked");
    check_cmd->add_option("--input,-i", check_opt.input, "matrix CSV file")->required();
    check_cmd->add_option("--alpha", check_opt.alpha, "alpha for the rankability screen")
        ->capture_default_str();
    check_cmd->add_option("--config", check_opt.config_path,
                          "key=value config file (flags take precedence)");

    ExperimentOptions sens_opt;
    sens_opt.out_prefix = "sensitivity";
    CLI::App* sens_cmd = app.add_subcommand(
        "experiment-sensitivity",
        "Monte Carlo study of ranking sensitivity vs inconsistency and incompleteness");
    add_experiment_flags(sens_cmd, sens_opt);
    sens_cmd->add_option("--ci-targets", sens_opt.ci_targets,
                         "average-CI ladder (default: 41 levels, 0.001..0.385)")
        ->delimiter(',');
    sens_cmd->add_option("--buckets", sens_opt.cfg.buckets, "incompleteness buckets")
        ->capture_default_str();
    sens_cmd->add_option("--out", sens_opt.out_prefix, "output file prefix")
        ->capture_default_str();

    ExperimentOptions dist_opt;
    dist_opt.out_prefix = "distribution";
    CLI::App* dist_cmd = app.add_subcommand(
        "experiment-distribution",
        "Monte Carlo study of regular vs irregular missing-comparison patterns");
    add_experiment_flags(dist_cmd, dist_opt);
    dist_cmd->add_option("--ci", dist_opt.ci, "average-CI target")->capture_default_str();
    dist_cmd->add_option("--out", dist_opt.out_prefix, "output file prefix")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[Usage]: " << e.what() << "\n";
        return 1;
    }

    try {
        if (rank_cmd->parsed()) {
            apply_config_file(rank_cmd, rank_opt.config_path, rank_opt.bindings());
            return cmd_rank(rank_opt);
        }
        if (idx_cmd->parsed()) {
            apply_config_file(idx_cmd, idx_opt.config_path, idx_opt.bindings());
            return cmd_indices(idx_opt);
        }
        if (check_cmd->parsed()) {
            apply_config_file(check_cmd, check_opt.config_path, check_opt.bindings());
            return cmd_check(check_opt);
        }
        if (sens_cmd->parsed()) {
            apply_config_file(sens_cmd, sens_opt.config_path, sens_opt.bindings());
            return cmd_experiment_sensitivity(sens_opt);
        }
        if (dist_cmd->parsed()) {
            apply_config_file(dist_cmd, dist_opt.config_path, dist_opt.bindings());
            return cmd_experiment_distribution(dist_opt);
        }
    } catch (const error& e) {
        return print_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error[Internal]: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
