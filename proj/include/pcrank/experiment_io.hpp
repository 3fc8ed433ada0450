#pragma once

#include <ostream>
#include <string>

#include "pcrank/montecarlo.hpp"

namespace pcrank {

/// Streaming writer for the per-trial record CSV. Column order is fixed:
///   seed,base_id,ci_group,ci_actual,k,scheme,iid_alpha,ii_beta,tree_index,
///   compound,manhattan,kendall_rescaled,converged
class RecordCsvWriter {
public:
    explicit RecordCsvWriter(std::ostream& out);
    void write(const ExperimentRecord& record);

private:
    std::ostream& out_;
};

/// Aggregate CSV of the sensitivity study: one row per occupied
/// (index, ci_group, bucket) cell.
void write_sensitivity_csv(std::ostream& out, const ExperimentConfig& cfg,
                           const SensitivityResult& result);

/// Aggregate CSV of the distribution study: one row per (scheme, k).
void write_distribution_csv(std::ostream& out, const DistributionResult& result);

/// Compact numeric formatting shared by the CSV writers: %.12g, with NaN
/// rendered as "nan".
std::string csv_number(double value);

}  // namespace pcrank
