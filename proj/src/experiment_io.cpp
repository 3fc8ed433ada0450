#include "pcrank/experiment_io.hpp"

#include <cstdio>

namespace pcrank {

std::string csv_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

RecordCsvWriter::RecordCsvWriter(std::ostream& out) : out_(out) {
    out_ << "seed,base_id,ci_group,ci_actual,k,scheme,iid_alpha,ii_beta,tree_index,"
            "compound,manhattan,kendall_rescaled,converged\n";
}

void RecordCsvWriter::write(const ExperimentRecord& r) {
    out_ << r.seed << ',' << r.base_id << ',' << r.ci_group << ',' << csv_number(r.ci_actual)
         << ',' << r.k << ',' << scheme_name(r.scheme) << ',' << csv_number(r.iid_alpha) << ','
         << csv_number(r.ii_beta) << ',' << csv_number(r.tree_index) << ','
         << csv_number(r.compound) << ',' << csv_number(r.manhattan) << ','
         << csv_number(r.kendall_rescaled) << ',' << (r.converged ? '1' : '0') << '\n';
}

void write_sensitivity_csv(std::ostream& out, const ExperimentConfig& cfg,
                           const SensitivityResult& result) {
    const SensitivityAggregate& agg = result.aggregate;
    out << "index,ci_group,ci_target,ci_mean,spread,bucket,bucket_lo,bucket_hi,count,"
           "mean_manhattan,se_manhattan,mean_kendall,se_kendall\n";
    for (int kind = 0; kind < kIndexKinds; ++kind) {
        for (int g = 0; g < agg.groups; ++g) {
            for (int b = 0; b < agg.buckets; ++b) {
                const auto& cell = agg.cell(static_cast<IndexKind>(kind), g, b);
                if (cell.md.count == 0) continue;
                out << index_kind_name(static_cast<IndexKind>(kind)) << ',' << g << ','
                    << csv_number(cfg.ci_targets[g]) << ','
                    << csv_number(agg.group_ci[g].mean) << ','
                    << csv_number(result.spreads[g]) << ',' << b << ','
                    << csv_number(static_cast<double>(b) / agg.buckets) << ','
                    << csv_number(static_cast<double>(b + 1) / agg.buckets) << ','
                    << cell.md.count << ',' << csv_number(cell.md.mean) << ','
                    << csv_number(cell.md.se()) << ',' << csv_number(cell.krd.mean) << ','
                    << csv_number(cell.krd.se()) << '\n';
            }
        }
    }
}

void write_distribution_csv(std::ostream& out, const DistributionResult& result) {
    const DistributionAggregate& agg = result.aggregate;
    out << "scheme,k,count,excluded,mean_manhattan,se_manhattan,mean_kendall,se_kendall,"
           "mean_iid_alpha,mean_ii_beta,mean_tree_index,mean_compound\n";
    const auto emit = [&](const char* name, const DistributionAggregate::Cell& cell, int k) {
        out << name << ',' << k << ',' << cell.md.count << ',' << cell.excluded << ','
            << csv_number(cell.md.mean) << ',' << csv_number(cell.md.se()) << ','
            << csv_number(cell.krd.mean) << ',' << csv_number(cell.krd.se());
        for (const Welford& w : cell.index) out << ',' << csv_number(w.mean);
        out << '\n';
    };
    for (int k = 0; k <= agg.k_max; ++k) emit("cb", agg.regular_cb[k], k);
    for (int k = 0; k <= agg.k_max; ++k) emit("cw", agg.irregular_cw[k], k);
}

}  // namespace pcrank
