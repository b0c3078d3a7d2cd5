#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gi/bounds.hpp"
#include "gi/ilp_backend.hpp"
#include "gi/instance.hpp"
#include "gi/merge.hpp"
#include "gi/reduction.hpp"
#include "gi/walk.hpp"

namespace gi {

enum class SolverChoice { Dp, Ilp };

struct RunConfig {
    SolverChoice solver = SolverChoice::Dp;
    std::optional<int> quota;         // absolute t
    std::optional<double> quota_frac; // t as a fraction of |C|
    ReductionPlan reduction;          // method, k, W, r, seed, mode, partition
    bool reduce = true;               // false: solve the instance as-is
    MergeStrategy merge = MergeStrategy::Exact;
    double time_limit_seconds = 900.0;
    int workers = 1;
    std::string backend_path;         // empty: GI_BACKEND_PATH, else reference
    std::string backend_args;
    bool compute_bounds = false;

    void validate() const;
    std::string canonical() const;    // stable key=value text, used for hashing
};

/// Parses "key = value" lines; '#' comments. Returns config with overrides
/// applied on top of defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

struct PartOutcome {
    std::vector<int> colors;     // working colors of the part
    Walk walk;
    double seconds = 0.0;
    std::string status;          // "ok", "timeout", or an error tag
};

struct RunReport {
    std::string instance_name;
    uint64_t instance_hash = 0;
    uint64_t config_hash = 0;
    uint64_t seed = 0;
    std::vector<PartOutcome> parts;
    Walk merged;
    double merged_weight = 0.0;
    double coverage = 0.0;        // in [0,1], start-visible colors included
    double search_seconds = 0.0;  // solver time summed over parts plus merging
    std::optional<BoundReport> bounds;
    std::string status;           // "ok" or a failure tag
};

RunReport run_pipeline(const InspectionInstance& inst, const RunConfig& cfg,
                       const std::string& instance_name = "instance");

/// CSV row per report (instance, config, weight, coverage %, search seconds,
/// bounds); JSON carries walks and part details. Either path may be empty.
void emit_results(const std::vector<RunReport>& reports, const std::string& csv_path,
                  const std::string& json_path);

std::string results_csv(const std::vector<RunReport>& reports);
std::string results_json(const std::vector<RunReport>& reports);

}  // namespace gi
