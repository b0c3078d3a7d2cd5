// Command-line front end: instance generation, solving, the
// reduce/partition/solve/merge pipeline, bound sweeps, walk validation, and
// LP export.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gi/bounds.hpp"
#include "gi/generator.hpp"
#include "gi/io.hpp"
#include "gi/metric_closure.hpp"
#include "gi/pipeline.hpp"
#include "gi/solver_ilp.hpp"

namespace {

struct CommonFlags {
    std::string instance_path;
    std::string config_path;
    std::string solver = "dp";
    std::string reduction = "greedy";
    std::string partition = "ordered";
    std::string mode = "after";
    std::string merge = "exact";
    int k = 10;
    int parts = 1;
    double r = 2.0;
    int quota = -1;
    double quota_frac = -1.0;
    double time_limit = 900.0;
    int threads = 1;
    uint64_t seed = 0;
    std::string backend;
    std::string out;
    std::string json_out;
    bool with_bounds = false;
};

gi::RunConfig build_config(const CommonFlags& flags, const CLI::App* cmd) {
    gi::RunConfig cfg;
    if (!flags.config_path.empty()) cfg = gi::load_config_file(flags.config_path);
    auto given = [&](const std::string& name) {
        const auto* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--solver")) cfg.solver = flags.solver == "ilp" ? gi::SolverChoice::Ilp : gi::SolverChoice::Dp;
    if (given("--reduction")) cfg.reduction.method = gi::reduction_method_from(flags.reduction);
    if (given("--partition")) cfg.reduction.partition = gi::partition_strategy_from(flags.partition);
    if (given("--mode")) cfg.reduction.mode = gi::reduction_mode_from(flags.mode);
    if (given("--merge")) cfg.merge = gi::merge_strategy_from(flags.merge);
    if (given("--k")) cfg.reduction.k = flags.k;
    if (given("--W")) cfg.reduction.parts = flags.parts;
    if (given("--r")) cfg.reduction.r = flags.r;
    if (given("--t")) cfg.quota = flags.quota;
    if (given("--t-frac")) cfg.quota_frac = flags.quota_frac;
    if (given("--time-limit")) cfg.time_limit_seconds = flags.time_limit;
    if (given("--threads")) cfg.workers = flags.threads;
    if (given("--seed")) cfg.reduction.seed = flags.seed;
    if (given("--backend")) cfg.backend_path = flags.backend;
    if (given("--bounds")) cfg.compute_bounds = flags.with_bounds;
    return cfg;
}

void add_run_flags(CLI::App* cmd, CommonFlags& flags, bool pipeline_flags) {
    cmd->add_option("--instance", flags.instance_path, "instance file")->required();
    cmd->add_option("--config", flags.config_path, "key = value config file");
    cmd->add_option("--solver", flags.solver, "dp | ilp");
    cmd->add_option("--t", flags.quota, "absolute color quota");
    cmd->add_option("--t-frac", flags.quota_frac, "quota as a fraction of |C|");
    cmd->add_option("--time-limit", flags.time_limit, "seconds per solver call");
    cmd->add_option("--threads", flags.threads, "worker count");
    cmd->add_option("--seed", flags.seed, "random seed");
    cmd->add_option("--backend", flags.backend, "external MILP solver executable");
    cmd->add_option("--out", flags.out, "CSV output path");
    cmd->add_option("--json", flags.json_out, "JSON output path");
    cmd->add_flag("--bounds", flags.with_bounds, "attach an LP/ST bound report");
    if (pipeline_flags) {
        cmd->add_option("--reduction", flags.reduction, "rand | greedy | outlier | metric");
        cmd->add_option("--partition", flags.partition, "ordered | geometric");
        cmd->add_option("--mode", flags.mode, "before | after");
        cmd->add_option("--merge", flags.merge, "concat | greedy | exact");
        cmd->add_option("--k", flags.k, "colors per part");
        cmd->add_option("--W", flags.parts, "number of parts");
        cmd->add_option("--r", flags.r, "outlier reduction scaling");
    }
}

int emit_report(const gi::RunReport& report, const CommonFlags& flags) {
    gi::emit_results({report}, flags.out, flags.json_out);
    std::cout << "instance " << report.instance_name << "\n"
              << "weight " << report.merged_weight << "\n"
              << "coverage_pct " << 100.0 * report.coverage << "\n"
              << "search_time_s " << report.search_seconds << "\n"
              << "status " << report.status << "\n";
    return report.status == "ok" ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph inspection solver toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto* solve_cmd = app.add_subcommand("solve", "solve one instance with one solver");
    add_run_flags(solve_cmd, flags, false);

    auto* pipeline_cmd = app.add_subcommand("pipeline", "reduce, partition, solve, merge");
    add_run_flags(pipeline_cmd, flags, true);

    auto* bounds_cmd = app.add_subcommand("bounds", "upper/lower bound sweep over quotas");
    std::string quota_list = "all";
    bounds_cmd->add_option("--instance", flags.instance_path)->required();
    bounds_cmd->add_option("--quotas", quota_list, "comma list of t values, or 'all'");
    bounds_cmd->add_option("--backend", flags.backend, "external MILP solver executable");
    bounds_cmd->add_option("--threads", flags.threads, "worker count");
    bounds_cmd->add_option("--out", flags.out, "CSV output path");

    auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic instance");
    std::string profile = "uniform";
    int gen_n = 100;
    gen_cmd->add_option("--profile", profile, "crisp-like | drone-like | uniform");
    gen_cmd->add_option("-n,--n", gen_n, "vertex count")->required();
    gen_cmd->add_option("--seed", flags.seed, "random seed");
    gen_cmd->add_option("--t", flags.quota, "quota recorded in the header");
    gen_cmd->add_option("--t-frac", flags.quota_frac, "header quota as a fraction of |C|");
    gen_cmd->add_option("--out", flags.out, "instance output path (default stdout)");

    auto* validate_cmd = app.add_subcommand("validate", "re-check walks in a results JSON");
    std::string results_path;
    validate_cmd->add_option("--instance", flags.instance_path)->required();
    validate_cmd->add_option("--results", results_path, "results JSON")->required();

    auto* export_cmd = app.add_subcommand("export-lp", "write the flow model as LP text");
    export_cmd->add_option("--instance", flags.instance_path)->required();
    export_cmd->add_option("--t", flags.quota, "absolute color quota");
    export_cmd->add_option("--t-frac", flags.quota_frac, "quota as a fraction of |C|");
    export_cmd->add_option("--out", flags.out, "LP output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed() || pipeline_cmd->parsed()) {
            const CLI::App* cmd = solve_cmd->parsed() ? solve_cmd : pipeline_cmd;
            gi::RunConfig cfg = build_config(flags, cmd);
            cfg.reduce = pipeline_cmd->parsed();
            std::vector<std::string> warnings;
            const auto inst = gi::load_instance_file(flags.instance_path, &warnings);
            for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
            return emit_report(gi::run_pipeline(inst, cfg, flags.instance_path), flags);
        }
        if (bounds_cmd->parsed()) {
            const auto raw = gi::load_instance_file(flags.instance_path);
            const auto normalized = gi::normalize_instance(raw);
            const auto& inst = normalized.instance;
            const auto mc = gi::MetricClosure::compute(inst, flags.threads);
            std::vector<int> quotas;
            if (quota_list == "all") {
                const int top = static_cast<int>(inst.placed_colors().size());
                for (int t = 0; t <= top; ++t) quotas.push_back(t);
            } else {
                std::istringstream in(quota_list);
                std::string tok;
                while (std::getline(in, tok, ',')) quotas.push_back(std::stoi(tok));
            }
            auto backend = gi::make_backend(flags.backend);
            const auto reports = gi::bound_sweep(inst, mc, quotas, *backend);
            std::ostringstream out;
            out << "quota,lower,upper\n";
            for (const auto& r : reports)
                out << r.quota << "," << r.lower << "," << r.upper << "\n";
            if (flags.out.empty()) {
                std::cout << out.str();
            } else {
                std::ofstream file(flags.out);
                file << out.str();
            }
            return 0;
        }
        if (gen_cmd->parsed()) {
            auto inst = gi::generate_instance(gi::generator_profile_from(profile), gen_n, flags.seed);
            if (gen_cmd->count("--t")) inst.quota = flags.quota;
            else if (gen_cmd->count("--t-frac"))
                inst.quota = static_cast<int>(std::llround(flags.quota_frac * inst.color_count));
            inst.validate();
            if (flags.out.empty()) std::cout << gi::write_instance(inst);
            else gi::save_instance_file(inst, flags.out);
            return 0;
        }
        if (validate_cmd->parsed()) {
            const auto inst = gi::load_instance_file(flags.instance_path);
            std::ifstream in(results_path);
            if (!in) throw gi::Error(gi::ErrorCode::IoError, "cannot open " + results_path);
            nlohmann::json doc = nlohmann::json::parse(in);
            int checked = 0, failed = 0;
            for (const auto& entry : doc) {
                gi::Walk walk;
                walk.vertices = entry.at("merged").at("vertices").get<std::vector<int>>();
                walk.weight = entry.at("merged").at("weight").get<double>();
                walk.collected = entry.at("merged").at("collected").get<std::vector<int>>();
                std::string why;
                ++checked;
                // Collected colors in reports are against the normalized view;
                // recompute locally instead of trusting the file.
                gi::Walk recomputed = gi::make_walk(inst, walk.vertices);
                const double scale = std::max(1.0, std::abs(recomputed.weight));
                if (walk.vertices.front() != inst.start || walk.vertices.back() != inst.start ||
                    std::abs(recomputed.weight - walk.weight) > 1e-9 * scale) {
                    ++failed;
                    std::cout << "FAIL " << entry.at("instance").get<std::string>() << "\n";
                } else {
                    std::cout << "OK " << entry.at("instance").get<std::string>() << " weight "
                              << recomputed.weight << " colors " << recomputed.collected.size() << "\n";
                }
            }
            std::cout << checked << " walks checked, " << failed << " failed\n";
            return failed == 0 ? 0 : 2;
        }
        if (export_cmd->parsed()) {
            const auto raw = gi::load_instance_file(flags.instance_path);
            auto normalized = gi::normalize_instance(raw);
            auto& inst = normalized.instance;
            if (export_cmd->count("--t"))
                inst.quota = std::max(0, flags.quota - normalized.quota_drop);
            else if (export_cmd->count("--t-frac"))
                inst.quota = std::max(0, static_cast<int>(std::llround(flags.quota_frac * raw.color_count)) -
                                             normalized.quota_drop);
            const auto model = gi::build_model(inst);
            if (flags.out.empty()) std::cout << gi::export_lp(model);
            else {
                std::ofstream file(flags.out);
                if (!file) throw gi::Error(gi::ErrorCode::IoError, "cannot write " + flags.out);
                file << gi::export_lp(model);
            }
            return 0;
        }
    } catch (const gi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
