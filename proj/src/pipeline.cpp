#include "gi/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gi/io.hpp"
#include "gi/metric_closure.hpp"
#include "gi/parallel.hpp"
#include "gi/solver_dp.hpp"
#include "gi/solver_ilp.hpp"

namespace gi {

namespace {

const char* solver_name(SolverChoice choice) { return choice == SolverChoice::Dp ? "dp" : "ilp"; }
const char* merge_name(MergeStrategy strategy) {
    switch (strategy) {
        case MergeStrategy::Concat: return "concat";
        case MergeStrategy::Greedy: return "greedy";
        case MergeStrategy::Exact: return "exact";
    }
    return "?";
}
const char* method_name(ReductionMethod method) {
    switch (method) {
        case ReductionMethod::Rand: return "rand";
        case ReductionMethod::Greedy: return "greedy";
        case ReductionMethod::Outlier: return "outlier";
        case ReductionMethod::Metric: return "metric";
    }
    return "?";
}

}  // namespace

void RunConfig::validate() const {
    if (reduction.parts < 1) throw Error(ErrorCode::InvalidConfig, "W must be at least 1");
    if (reduction.k < 1 && reduce) throw Error(ErrorCode::InvalidConfig, "k must be at least 1");
    if (reduction.r < 1.0) throw Error(ErrorCode::InvalidConfig, "r must be at least 1");
    if (workers < 1) throw Error(ErrorCode::InvalidConfig, "workers must be at least 1");
    if (time_limit_seconds < 0) throw Error(ErrorCode::InvalidConfig, "time limit must be nonnegative");
    if (quota && quota_frac) throw Error(ErrorCode::InvalidConfig, "set either t or t-frac, not both");
    if (quota_frac && (*quota_frac < 0.0 || *quota_frac > 1.0))
        throw Error(ErrorCode::InvalidConfig, "t-frac must lie in [0,1]");
}

std::string RunConfig::canonical() const {
    std::ostringstream out;
    out << "solver = " << solver_name(solver) << "\n";
    if (quota) out << "t = " << *quota << "\n";
    if (quota_frac) out << "t-frac = " << *quota_frac << "\n";
    out << "reduce = " << (reduce ? "true" : "false") << "\n";
    out << "reduction = " << method_name(reduction.method) << "\n";
    out << "k = " << reduction.k << "\n";
    out << "W = " << reduction.parts << "\n";
    out << "r = " << reduction.r << "\n";
    out << "seed = " << reduction.seed << "\n";
    out << "mode = " << (reduction.mode == ReductionMode::Before ? "before" : "after") << "\n";
    out << "partition = "
        << (reduction.partition == PartitionStrategy::Ordered ? "ordered" : "geometric") << "\n";
    out << "merge = " << merge_name(merge) << "\n";
    out << "time-limit = " << time_limit_seconds << "\n";
    out << "workers = " << workers << "\n";
    return out.str();
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::istringstream probe(line);
            std::string leftover;
            if (probe >> leftover)
                throw Error(ErrorCode::InvalidConfig,
                            "config line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto from = s.find_first_not_of(" \t\r");
            const auto to = s.find_last_not_of(" \t\r");
            return from == std::string::npos ? std::string() : s.substr(from, to - from + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "solver") {
                if (value == "dp") cfg.solver = SolverChoice::Dp;
                else if (value == "ilp") cfg.solver = SolverChoice::Ilp;
                else throw Error(ErrorCode::InvalidConfig, "solver must be dp or ilp");
            } else if (key == "t") cfg.quota = std::stoi(value);
            else if (key == "t-frac") cfg.quota_frac = std::stod(value);
            else if (key == "reduce") cfg.reduce = value == "true" || value == "1";
            else if (key == "reduction") cfg.reduction.method = reduction_method_from(value);
            else if (key == "k") cfg.reduction.k = std::stoi(value);
            else if (key == "W") cfg.reduction.parts = std::stoi(value);
            else if (key == "r") cfg.reduction.r = std::stod(value);
            else if (key == "seed") cfg.reduction.seed = std::stoull(value);
            else if (key == "mode") cfg.reduction.mode = reduction_mode_from(value);
            else if (key == "partition") cfg.reduction.partition = partition_strategy_from(value);
            else if (key == "merge") cfg.merge = merge_strategy_from(value);
            else if (key == "time-limit") cfg.time_limit_seconds = std::stod(value);
            else if (key == "workers") cfg.workers = std::stoi(value);
            else if (key == "backend") cfg.backend_path = value;
            else if (key == "backend-args") cfg.backend_args = value;
            else if (key == "bounds") cfg.compute_bounds = value == "true" || value == "1";
            else throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw Error(ErrorCode::InvalidConfig,
                        "config line " + std::to_string(line_no) + ": bad value for " + key);
        }
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

int effective_quota(const InspectionInstance& normalized, const RunConfig& cfg, int original_colors,
                    int quota_drop) {
    const int collectible = static_cast<int>(normalized.placed_colors().size());
    if (cfg.quota) return std::clamp(*cfg.quota - quota_drop, 0, collectible);
    if (cfg.quota_frac) {
        const int wanted = static_cast<int>(std::llround(*cfg.quota_frac * original_colors));
        return std::clamp(wanted - quota_drop, 0, collectible);
    }
    return collectible;
}

Walk solve_part(const InspectionInstance& part, const MetricClosure& mc, const RunConfig& cfg,
                SolverBackend& backend,
                std::chrono::steady_clock::time_point deadline, int workers) {
    if (cfg.solver == SolverChoice::Dp) {
        DpOptions opts;
        opts.workers = workers;
        opts.deadline = deadline;
        return solve_dp(part, mc, opts);
    }
    const double remaining =
        std::chrono::duration<double>(deadline - std::chrono::steady_clock::now()).count();
    return solve_instance_ilp(part, backend, std::max(0.0, remaining), workers);
}

}  // namespace

RunReport run_pipeline(const InspectionInstance& inst, const RunConfig& cfg,
                       const std::string& instance_name) {
    cfg.validate();
    RunReport report;
    report.instance_name = instance_name;
    report.instance_hash = instance_hash(inst);
    report.config_hash = fnv1a(cfg.canonical());
    report.seed = cfg.reduction.seed;
    report.status = "ok";

    const NormalizedInstance normalized = normalize_instance(inst);
    const auto& base = normalized.instance;
    const MetricClosure mc = MetricClosure::compute(base, cfg.workers);
    auto backend = make_backend(cfg.backend_path, cfg.backend_args);

    // Step (c): filter and partition the colors.
    std::vector<InspectionInstance> parts;
    std::vector<std::vector<int>> part_colors;
    if (cfg.reduce) {
        PartitionedInstances split = reduce_then_partition(base, cfg.reduction);
        parts = std::move(split.parts);
        part_colors = std::move(split.part_colors);
    } else {
        InspectionInstance whole = base;
        whole.quota = effective_quota(base, cfg, inst.color_count, normalized.quota_drop);
        parts.push_back(whole);
        part_colors.push_back(whole.placed_colors());
    }

    // Steps (d)-(e): solve each part under the time limit on a worker pool.
    report.parts.resize(parts.size());
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::microseconds(static_cast<long long>(cfg.time_limit_seconds * 1e6));
    const int pool = std::min<int>(cfg.workers, static_cast<int>(parts.size()));
    const int inner_workers = std::max(1, cfg.workers / std::max(1, pool));
    parallel_for(parts.size(), pool, [&](size_t i) {
        PartOutcome& outcome = report.parts[i];
        outcome.colors = part_colors[i];
        const auto began = std::chrono::steady_clock::now();
        try {
            const Walk in_part = solve_part(parts[i], mc, cfg, *backend, deadline, inner_workers);
            // Inspected colors are reconstructed against the full coloring,
            // not just the part's working set.
            outcome.walk = make_walk(base, in_part.vertices);
            outcome.status = "ok";
        } catch (const Error& e) {
            outcome.status = error_code_name(e.code());
            outcome.walk = make_walk(base, {base.start});
        }
        outcome.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - began).count();
    }, 1);
    for (const auto& outcome : report.parts)
        if (outcome.status != "ok") report.status = "partial";

    // Step (f): merge the part walks into one closed walk.
    const auto merge_began = std::chrono::steady_clock::now();
    std::vector<Walk> walks;
    for (auto& outcome : report.parts) walks.push_back(outcome.walk);
    MergeInput merge_input = MergeInput::build(base, std::move(walks));
    switch (cfg.merge) {
        case MergeStrategy::Concat: report.merged = concat_merge(merge_input); break;
        case MergeStrategy::Greedy: report.merged = greedy_merge(merge_input); break;
        case MergeStrategy::Exact:
            report.merged = exact_merge(merge_input, *backend, cfg.time_limit_seconds);
            break;
    }
    const double merge_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - merge_began).count();

    report.merged_weight = report.merged.weight;
    std::set<int> covered(normalized.start_colors.begin(), normalized.start_colors.end());
    covered.insert(report.merged.collected.begin(), report.merged.collected.end());
    report.coverage =
        inst.color_count == 0 ? 1.0 : static_cast<double>(covered.size()) / inst.color_count;
    for (const auto& outcome : report.parts) report.search_seconds += outcome.seconds;
    report.search_seconds += merge_seconds;

    if (cfg.compute_bounds) {
        const int t = effective_quota(base, cfg, inst.color_count, normalized.quota_drop);
        InspectionInstance at_quota = base;
        at_quota.quota = t;
        const auto reports = bound_sweep(at_quota, mc, {t}, *backend);
        report.bounds = reports.front();
    }
    return report;
}

namespace {

std::string format_fixed(double value, int decimals) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(decimals);
    out << value;
    return out.str();
}

nlohmann::json walk_json(const Walk& walk) {
    return {{"vertices", walk.vertices}, {"weight", walk.weight}, {"collected", walk.collected}};
}

}  // namespace

std::string results_csv(const std::vector<RunReport>& reports) {
    std::ostringstream out;
    out << "instance,config_hash,weight,coverage_pct,search_time_s,lower_bound,upper_bound,status\n";
    for (const auto& r : reports) {
        out << r.instance_name << "," << std::hex << r.config_hash << std::dec << ","
            << format_fixed(r.merged_weight, 9) << "," << format_fixed(100.0 * r.coverage, 2) << ","
            << format_fixed(r.search_seconds, 3) << ",";
        if (r.bounds) out << format_fixed(r.bounds->lower, 9);
        out << ",";
        if (r.bounds) out << format_fixed(r.bounds->upper, 9);
        out << "," << r.status;
        if (r.bounds && (r.merged_weight < r.bounds->lower - 1e-6)) out << ",bound-mismatch";
        out << "\n";
    }
    return out.str();
}

std::string results_json(const std::vector<RunReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& p : r.parts)
            parts.push_back({{"colors", p.colors},
                             {"walk", walk_json(p.walk)},
                             {"seconds", p.seconds},
                             {"status", p.status}});
        nlohmann::json entry = {{"instance", r.instance_name},
                                {"instance_hash", r.instance_hash},
                                {"config_hash", r.config_hash},
                                {"seed", r.seed},
                                {"parts", parts},
                                {"merged", walk_json(r.merged)},
                                {"coverage", r.coverage},
                                {"search_seconds", r.search_seconds},
                                {"status", r.status}};
        if (r.bounds)
            entry["bounds"] = {{"quota", r.bounds->quota},
                               {"lower", r.bounds->lower},
                               {"upper", r.bounds->upper}};
        arr.push_back(entry);
    }
    return arr.dump(2) + "\n";
}

void emit_results(const std::vector<RunReport>& reports, const std::string& csv_path,
                  const std::string& json_path) {
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + csv_path);
        out << results_csv(reports);
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + json_path);
        out << results_json(reports);
    }
}

}  // namespace gi
