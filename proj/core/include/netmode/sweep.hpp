#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "netmode/generation.hpp"

namespace netmode {

/// Degree-axis experiment: for each k in [k_min, k_max] stepped by
/// k_step and each instance, generate / analyze / rewire / re-analyze
/// and emit one CSV row. Byte-identical output for identical configs.
struct SweepConfig {
    std::int64_t nodes = 0;
    double k_min = 0.0;
    double k_max = 0.0;
    double k_step = 1.0;
    std::int32_t instances_per_k = 1;
    std::uint64_t base_seed = 0;
    GraphModel model = GraphModel::StaticScaleFree;
    double gamma = 3.0;
    /// Keep only instances whose largest alternating component is an
    /// input component.
    bool filter_input_largest = false;
    double mode_threshold = 0.5;

    /// Throws ConfigInvalid on violated bounds.
    void validate() const;
};

/// Deterministic per-instance seed derived from the axis position.
std::uint64_t instance_seed(std::uint64_t base_seed, std::int32_t k_index,
                            std::int32_t instance_index);

inline constexpr const char* kSweepCsvHeader =
    "k,seed,n,l,n_d,in_before,in_after,ic_max_before,p_m,p_r,delta_nd,delta_ic";

/// Writes the header plus one row per (k, instance), ordered by
/// (k, instance). A failed instance keeps its row, with nan fields and a
/// trailing error marker column, and the sweep continues.
void run_experiment_sweep(const SweepConfig& config, std::ostream& csv_out);

std::string sweep_csv(const SweepConfig& config);

}  // namespace netmode
