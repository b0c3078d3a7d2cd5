// Acceptance suite: each check prints one [PASS]/[FAIL] line; the process
// exits nonzero if any check fails. The external MILP adapter is picked up
// from GI_TOOLS_DIR or GI_BACKEND_PATH when present; checks that need an LP
// backend fail with a message otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gi/bounds.hpp"
#include "gi/generator.hpp"
#include "gi/ilp_backend.hpp"
#include "gi/ilp_model.hpp"
#include "gi/io.hpp"
#include "gi/merge.hpp"
#include "gi/metric_closure.hpp"
#include "gi/oracle.hpp"
#include "gi/pipeline.hpp"
#include "gi/reduction.hpp"
#include "gi/solver_dp.hpp"
#include "gi/solver_ilp.hpp"
#include "support.hpp"

using namespace gi;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.empty() ? "" : " — ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point from) {
    return std::chrono::duration<double>(Clock::now() - from).count();
}

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

struct SuiteInstance {
    InspectionInstance inst;  // normalized
    MetricClosure mc;
    double dp_weight = 0.0;
};

std::vector<SuiteInstance> the_suite;

// --- Criterion 1: DP equals the exhaustive oracle on 200 seeded instances.
void check_oracle_equivalence() {
    const auto began = Clock::now();
    int checked = 0;
    std::string detail;
    bool ok = true;
    for (uint64_t seed = 1; seed <= 200 && ok; ++seed) {
        auto normalized = normalize_instance(test::random_instance(seed));
        SuiteInstance entry{normalized.instance, MetricClosure::compute(normalized.instance), 0.0};
        const auto dp = solve_dp(entry.inst, entry.mc);
        const auto oracle = brute_force_gi(entry.inst, entry.mc);
        entry.dp_weight = dp.weight;
        if (std::abs(dp.weight - oracle.weight) > 1e-9) {
            ok = false;
            detail = "seed " + std::to_string(seed) + ": dp " + fmt(dp.weight) + " vs oracle " +
                     fmt(oracle.weight);
        }
        std::string why;
        if (ok && !validate_walk(entry.inst, dp, &why)) {
            ok = false;
            detail = "seed " + std::to_string(seed) + ": " + why;
        }
        the_suite.push_back(std::move(entry));
        ++checked;
    }
    const double elapsed = seconds_since(began);
    if (ok && elapsed >= 60.0) {
        ok = false;
        detail = "suite took " + fmt(elapsed) + " s (budget 60 s)";
    }
    if (ok)
        detail = std::to_string(checked) + " instances, exact weight match, " + fmt(elapsed) + " s";
    report("oracle equivalence (dp == brute force, 200 instances)", ok, detail);
}

// --- Criterion 2: ILP objective equals the DP optimum; recovery validates.
void check_ilp_dp_cross_validation() {
    const auto began = Clock::now();
    ReferenceBackend reference;
    bool ok = true;
    std::string detail;
    int solved = 0;
    for (const auto& entry : the_suite) {
        if (!ok) break;
        if (entry.inst.quota == 0) continue;
        const auto model = build_model(entry.inst);
        const auto sol = solve_ilp(model, reference, 120.0);
        if (sol.status != SolveStatus::Optimal) {
            ok = false;
            detail = "reference backend did not reach optimality";
            break;
        }
        if (std::abs(sol.objective - entry.dp_weight) > 1e-6) {
            ok = false;
            detail = "objective " + fmt(sol.objective) + " vs dp " + fmt(entry.dp_weight);
            break;
        }
        const auto walk = recover_walk(entry.inst, model, sol);
        std::string why;
        if (!validate_walk(entry.inst, walk, &why) ||
            std::abs(walk.weight - sol.objective) > 1e-6) {
            ok = false;
            detail = "recovered walk mismatch: " + why;
            break;
        }
        ++solved;
    }
    double elapsed = seconds_since(began);
    if (ok && elapsed >= 300.0) {
        ok = false;
        detail = "reference pass took " + fmt(elapsed) + " s (budget 300 s)";
    }

    // External pass, batched into one adapter invocation.
    std::string external_note = "; external backend not configured";
    if (ok) {
        if (auto external = test::external_backend_or_null()) {
            std::vector<const SuiteInstance*> entries;
            std::vector<IlpModel> models;
            for (const auto& entry : the_suite) {
                if (entry.inst.quota == 0) continue;
                entries.push_back(&entry);
                models.push_back(build_model(entry.inst));
            }
            std::vector<const IlpModel*> refs;
            for (const auto& m : models) refs.push_back(&m);
            SolveOptions opts;
            const auto sols = external->solve_all(refs, opts);
            for (size_t i = 0; i < sols.size() && ok; ++i) {
                if (sols[i].status != SolveStatus::Optimal ||
                    std::abs(sols[i].objective - entries[i]->dp_weight) > 1e-6) {
                    ok = false;
                    detail = "external objective " + fmt(sols[i].objective) + " vs dp " +
                             fmt(entries[i]->dp_weight);
                    break;
                }
                const auto walk = recover_walk(entries[i]->inst, models[i], sols[i]);
                if (std::abs(walk.weight - sols[i].objective) > 1e-6) {
                    ok = false;
                    detail = "external recovery weight mismatch";
                }
            }
            external_note = "; external backend agrees on " + std::to_string(sols.size());
        }
    }
    elapsed = seconds_since(began);
    if (ok)
        detail = std::to_string(solved) + " reference solves" + external_note + ", " +
                 fmt(elapsed) + " s";
    report("ILP = DP cross-validation", ok, detail);
}

// --- Criterion 3: the Steiner-doubling bound is tight on the star family.
void check_theorem3_tightness() {
    bool ok = true;
    std::string detail;
    for (int t = 2; t <= 8 && ok; ++t) {
        const auto inst = test::tightness_star(t);
        const auto mc = MetricClosure::compute(inst);
        const auto st = algorithm_st(inst, mc);
        const auto dp = solve_dp(inst, mc);
        if (st.weight != 2.0 * t || dp.weight != 2.0) {
            ok = false;
            detail = "t=" + std::to_string(t) + ": st " + fmt(st.weight) + ", dp " + fmt(dp.weight);
        }
    }
    if (ok) detail = "st = 2t and dp = 2 exactly for t in 2..8";
    report("Steiner-doubling tightness on the star family", ok, detail);
}

// --- Criterion 4: LP lower bound <= opt <= ST <= t * opt for every quota.
void check_bound_sandwich() {
    const auto began = Clock::now();
    auto external = test::external_backend_or_null();
    if (!external) {
        report("bound sandwich (lp <= dp <= st <= t*dp, all quotas)", false,
               "needs an LP-capable backend (set GI_BACKEND_PATH)");
        return;
    }
    bool ok = true;
    std::string detail;
    struct Row {
        const SuiteInstance* entry;
        int quota;
        double dp, st;
    };
    std::vector<Row> rows;
    std::vector<IlpModel> models;
    for (const auto& entry : the_suite) {
        const int top = static_cast<int>(entry.inst.placed_colors().size());
        DpTable table(entry.inst, entry.mc, top);
        for (int t = 1; t <= top; ++t) {
            const auto best = table.best_for_quota(t);
            if (!best) {
                ok = false;
                detail = "dp table missing quota " + std::to_string(t);
                break;
            }
            Row row{&entry, t, best->weight, 0.0};
            row.st = algorithm_st(entry.inst, entry.mc, t).weight;
            rows.push_back(row);
            InspectionInstance at_quota = entry.inst;
            at_quota.quota = t;
            models.push_back(build_model(at_quota));
        }
        if (!ok) break;
    }
    if (ok) {
        std::vector<const IlpModel*> refs;
        for (const auto& m : models) refs.push_back(&m);
        SolveOptions opts;
        opts.relax = true;
        const auto sols = external->solve_all(refs, opts);
        for (size_t i = 0; i < rows.size() && ok; ++i) {
            if (sols[i].status != SolveStatus::Optimal) {
                ok = false;
                detail = "LP relaxation not optimal";
                break;
            }
            const double lower = sols[i].objective;
            const auto& row = rows[i];
            if (!(lower <= row.dp + 1e-6 && row.dp <= row.st + 1e-6 &&
                  row.st <= row.quota * row.dp + 1e-6)) {
                ok = false;
                detail = "quota " + std::to_string(row.quota) + ": lp " + fmt(lower) + ", dp " +
                         fmt(row.dp) + ", st " + fmt(row.st);
            }
        }
    }
    if (ok)
        detail = std::to_string(rows.size()) + " (instance, quota) pairs, " +
                 fmt(seconds_since(began)) + " s";
    report("bound sandwich (lp <= dp <= st <= t*dp, all quotas)", ok, detail);
}

// --- Criterion 5: recovered optimal walks use at most 2n-2 arcs; a tree
// with uniquely colored leaves is tight.
void check_edge_count_bound() {
    ReferenceBackend reference;
    bool ok = true;
    std::string detail;
    for (const auto& entry : the_suite) {
        if (entry.inst.quota == 0) continue;
        const auto model = build_model(entry.inst);
        const auto sol = solve_ilp(model, reference, 120.0);
        const auto walk = recover_walk(entry.inst, model, sol);
        const int arcs = static_cast<int>(walk.vertices.size()) - 1;
        if (arcs > 2 * entry.inst.vertex_count - 2) {
            ok = false;
            detail = "walk with " + std::to_string(arcs) + " arcs on n=" +
                     std::to_string(entry.inst.vertex_count);
            break;
        }
    }
    if (ok) {
        // Unit-weight tree, leaves uniquely colored, every color required.
        std::mt19937_64 rng(424242);
        int tested = 0;
        for (int trial = 0; trial < 10 && ok; ++trial) {
            InspectionInstance tree;
            tree.vertex_count = 8;
            tree.start = 0;
            tree.colors.assign(8, {});
            for (int v = 1; v < 8; ++v)
                tree.edges.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v, 1.0});
            std::vector<int> degree(8, 0);
            for (const auto& e : tree.edges) {
                ++degree[e.u];
                ++degree[e.v];
            }
            if (degree[0] == 1) continue;  // keep the start interior
            int color = 0;
            for (int v = 1; v < 8; ++v)
                if (degree[v] == 1) tree.colors[v] = {color++};
            if (color == 0) continue;
            tree.color_count = color;
            tree.quota = color;
            const auto model = build_model(tree);
            const auto sol = solve_ilp(model, reference, 120.0);
            const auto walk = recover_walk(tree, model, sol);
            const int arcs = static_cast<int>(walk.vertices.size()) - 1;
            if (arcs != 2 * tree.vertex_count - 2) {
                ok = false;
                detail = "tree walk uses " + std::to_string(arcs) + " arcs, expected " +
                         std::to_string(2 * tree.vertex_count - 2);
            }
            ++tested;
        }
        if (ok && tested == 0) {
            ok = false;
            detail = "no tree family instance was generated";
        }
    }
    if (ok) detail = "all recovered walks within 2n-2 arcs; tree family tight";
    report("optimal-walk edge-count bound", ok, detail);
}

// --- Criterion 6: merge ordering and exactness on 100 random 3-walk merges.
void check_merge_ordering() {
    const auto began = Clock::now();
    ReferenceBackend reference;
    auto external = test::external_backend_or_null();
    SolverBackend& backend = external ? static_cast<SolverBackend&>(*external) : reference;
    bool ok = true;
    std::string detail;
    int done = 0;
    for (uint64_t seed = 1000; seed < 1100 && ok; ++seed) {
        const auto inst = normalize_instance(test::random_instance(seed, 10, 4)).instance;
        const auto mc = MetricClosure::compute(inst);
        std::mt19937_64 rng(seed);
        std::vector<Walk> walks;
        for (int i = 0; i < 3; ++i) {
            std::vector<int> seq{inst.start};
            const int hops = std::uniform_int_distribution<int>(1, 3)(rng);
            for (int h = 0; h < hops; ++h)
                seq.push_back(std::uniform_int_distribution<int>(0, inst.vertex_count - 1)(rng));
            seq.push_back(inst.start);
            walks.push_back(expand_closure_walk(inst, seq, mc));
        }
        const auto in = MergeInput::build(inst, walks);
        const auto exact = exact_merge(in, backend);
        const auto greedy = greedy_merge(in);
        const auto concat = concat_merge(in);
        const auto oracle = brute_force_mses(in.unioned);
        if (!(exact.weight <= greedy.weight + 1e-9 && greedy.weight <= concat.weight + 1e-9)) {
            ok = false;
            detail = "ordering violated at seed " + std::to_string(seed);
        } else if (std::abs(exact.weight - oracle.total_weight()) > 1e-9) {
            ok = false;
            detail = "exact " + fmt(exact.weight) + " vs oracle " + fmt(oracle.total_weight());
        }
        ++done;
    }
    double elapsed = seconds_since(began);
    if (ok && elapsed >= 120.0) {
        ok = false;
        detail = "merges took " + fmt(elapsed) + " s (budget 120 s)";
    }
    if (ok)
        detail = std::to_string(done) + " merges via " +
                 (external ? std::string("external") : std::string("reference")) + " backend, " +
                 fmt(elapsed) + " s";
    report("merge ordering (exact <= greedy <= concat, exact = oracle)", ok, detail);
}

// --- Criterion 7: spanning-subgraph weight n iff Hamiltonian, n <= 7.
void check_hamiltonicity_reduction() {
    const auto began = Clock::now();
    ReferenceBackend reference;
    auto external = test::external_backend_or_null();
    bool ok = true;
    std::string detail;
    int done = 0;
    for (int n = 2; n <= 7 && ok; ++n) {
        std::mt19937_64 rng(static_cast<uint64_t>(n) * 7919);
        for (int sample = 0; sample < 100 && ok; ++sample) {
            // Random connected graph: spanning tree plus random extras.
            std::vector<std::pair<int, int>> edges;
            for (int v = 1; v < n; ++v)
                edges.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v});
            const int extras = std::uniform_int_distribution<int>(0, n)(rng);
            for (int i = 0; i < extras; ++i) {
                const int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
                const int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
                if (u != v) edges.push_back({std::min(u, v), std::max(u, v)});
            }
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

            InspectionInstance inst;
            inst.vertex_count = n;
            inst.start = 0;
            inst.colors.assign(n, {});
            for (auto [u, v] : edges) inst.edges.push_back({u, v, 1.0});
            WalkMultigraph doubled;
            doubled.vertex_count = n;
            for (auto [u, v] : edges) doubled.add_edge(u, v, 1.0, 2);

            MergeInput in;
            in.inst = &inst;
            in.unioned = doubled;
            in.walks = {make_walk(inst, euler_tour(doubled, 0))};

            SolverBackend& backend =
                (external && sample < 5) ? static_cast<SolverBackend&>(*external) : reference;
            const auto merged = exact_merge(in, backend);
            const bool weight_is_n = std::abs(merged.weight - n) <= 1e-6;
            const bool ham = hamiltonian_check(n, edges);
            if (weight_is_n != ham) {
                ok = false;
                detail = "n=" + std::to_string(n) + " sample " + std::to_string(sample) +
                         ": weight " + fmt(merged.weight) + ", hamiltonian=" + (ham ? "yes" : "no");
            }
            ++done;
        }
    }
    if (ok)
        detail = std::to_string(done) + " graphs, iff holds, " + fmt(seconds_since(began)) + " s";
    report("Hamiltonicity reduction sanity", ok, detail);
}

// --- Criterion 8: byte-identical CSV (timing aside) across two runs.
void check_pipeline_determinism() {
    const auto began = Clock::now();
    const std::string backend_path = test::external_backend_path();
    if (backend_path.empty()) {
        report("pipeline determinism (crisp-like n=200, exact merge)", false,
               "needs the MILP adapter for exact merging (set GI_BACKEND_PATH)");
        return;
    }
    const auto inst = generate_instance(GeneratorProfile::CrispLike, 200, 12345);
    RunConfig cfg;
    cfg.solver = SolverChoice::Dp;
    cfg.reduction.method = ReductionMethod::Greedy;
    cfg.reduction.k = 10;
    cfg.reduction.parts = 3;
    cfg.reduction.seed = 99;
    cfg.merge = MergeStrategy::Exact;
    cfg.workers = 1;
    cfg.backend_path = backend_path;

    auto strip_timing = [](const std::string& csv) {
        std::istringstream in(csv);
        std::ostringstream out;
        std::string line;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::istringstream cells_in(line);
            std::string cell;
            while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
            for (size_t i = 0; i < cells.size(); ++i) {
                if (i == 4) continue;
                out << cells[i] << (i + 1 == cells.size() ? "" : ",");
            }
            out << "\n";
        }
        return out.str();
    };
    const auto run_a = run_pipeline(inst, cfg, "crisp-200");
    const auto run_b = run_pipeline(inst, cfg, "crisp-200");
    const std::string a = strip_timing(results_csv({run_a}));
    const std::string b = strip_timing(results_csv({run_b}));
    bool ok = a == b && run_a.status == "ok";
    std::string detail = ok ? "two runs byte-identical, " + fmt(seconds_since(began)) + " s"
                            : (run_a.status != "ok" ? "pipeline status " + run_a.status
                                                    : "CSV outputs differ");
    report("pipeline determinism (crisp-like n=200, exact merge)", ok, detail);
}

// --- Criterion 9: k=20 drone-like instance solves inside the time limit;
// 8 workers at least twice as fast as 1.
void check_scalability() {
    const auto began = Clock::now();
    const auto raw = generate_instance(GeneratorProfile::DroneLike, 1000, 777);
    const auto normalized = normalize_instance(raw);
    const auto& base = normalized.instance;
    const auto mc = MetricClosure::compute(base, 2);
    const auto reduced = greedy_md(base.placed_colors(), base.colors[base.start],
                                   euclidean_similarity(base), 20);
    InspectionInstance inst = base;
    std::vector<char> keep(inst.color_count, 0);
    for (int c : reduced.selected) keep[c] = 1;
    for (auto& cs : inst.colors)
        cs.erase(std::remove_if(cs.begin(), cs.end(), [&](int c) { return !keep[c]; }), cs.end());
    inst.quota = 20;

    DpOptions one;
    one.workers = 1;
    one.deadline = Clock::now() + std::chrono::seconds(900);
    const auto t1_begin = Clock::now();
    const auto walk_serial = solve_dp(inst, mc, one);
    const double t1 = seconds_since(t1_begin);

    DpOptions eight;
    eight.workers = 8;
    eight.deadline = Clock::now() + std::chrono::seconds(900);
    const auto t8_begin = Clock::now();
    const auto walk_parallel = solve_dp(inst, mc, eight);
    const double t8 = seconds_since(t8_begin);

    const bool same = std::abs(walk_serial.weight - walk_parallel.weight) <= 1e-9;
    const bool within_limit = t1 < 900.0 && t8 < 900.0;
    const bool speedup = t1 / t8 >= 2.0;
    const bool ok = same && within_limit && speedup;
    std::string detail = "1 worker " + fmt(t1) + " s, 8 workers " + fmt(t8) + " s, speedup " +
                         fmt(t1 / t8) + "x, weight " + fmt(walk_serial.weight) + ", total " +
                         fmt(seconds_since(began)) + " s";
    if (!same) detail += "; WEIGHTS DIFFER";
    report("scalability smoke test (k=20, n=1000, 900 s budget, 2x speedup)", ok, detail);
}

// --- Criterion 10: greedy dispersal beats random reduction on coverage
// (paired one-sided sign test, p < 0.05).
void check_reduction_quality() {
    const auto began = Clock::now();
    int wins = 0, losses = 0, ties = 0;
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        const auto inst = generate_instance(GeneratorProfile::CrispLike, 200, 5000 + seed);
        RunConfig cfg;
        cfg.solver = SolverChoice::Dp;
        cfg.reduction.k = 10;
        cfg.reduction.parts = 3;
        cfg.reduction.seed = seed;
        cfg.merge = MergeStrategy::Greedy;
        cfg.workers = 2;

        cfg.reduction.method = ReductionMethod::Greedy;
        const double greedy_cov = run_pipeline(inst, cfg, "greedy").coverage;
        cfg.reduction.method = ReductionMethod::Rand;
        const double rand_cov = run_pipeline(inst, cfg, "rand").coverage;
        if (greedy_cov > rand_cov) ++wins;
        else if (greedy_cov < rand_cov) ++losses;
        else ++ties;
    }
    // One-sided sign test: P[Bin(wins+losses, 1/2) >= wins].
    const int n = wins + losses;
    double p = 0.0;
    for (int k = wins; k <= n; ++k) {
        double log_term = 0.0;
        for (int i = 0; i < k; ++i) log_term += std::log((n - i) / static_cast<double>(i + 1));
        p += std::exp(log_term - n * std::log(2.0));
    }
    const bool ok = p < 0.05;
    report("reduction quality (greedy beats random coverage, sign test)", ok,
           std::to_string(wins) + " wins / " + std::to_string(losses) + " losses / " +
               std::to_string(ties) + " ties, p = " + fmt(p) + ", " + fmt(seconds_since(began)) +
               " s");
}

}  // namespace

int main() {
    check_oracle_equivalence();
    check_ilp_dp_cross_validation();
    check_theorem3_tightness();
    check_bound_sandwich();
    check_edge_count_bound();
    check_merge_ordering();
    check_hamiltonicity_reduction();
    check_pipeline_determinism();
    check_scalability();
    check_reduction_quality();
    if (failures == 0) {
        std::printf("all acceptance checks passed\n");
        return 0;
    }
    std::printf("%d acceptance check(s) failed\n", failures);
    return 1;
}
