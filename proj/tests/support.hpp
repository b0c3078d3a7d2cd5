#pragma once

// Shared helpers for the test suites: seeded random instances in the oracle
// range, an independent all-pairs oracle, and external-backend discovery.

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gi/ilp_backend.hpp"
#include "gi/instance.hpp"
#include "gi/walk.hpp"

namespace gi::test {

/// Connected random instance: spanning tree plus extra edges, strictly
/// positive weights, every color placed on at least one non-start vertex.
inline InspectionInstance random_instance(uint64_t seed, int max_n = 12, int max_colors = 8,
                                          bool color_start = true) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    InspectionInstance inst;
    inst.vertex_count = pick(2, max_n);
    inst.color_count = pick(1, max_colors);
    inst.start = pick(0, inst.vertex_count - 1);
    inst.colors.assign(inst.vertex_count, {});

    std::uniform_real_distribution<double> weight(0.1, 10.0);
    for (int v = 1; v < inst.vertex_count; ++v)
        inst.edges.push_back({pick(0, v - 1), v, weight(rng)});
    const int extra = pick(0, inst.vertex_count);
    for (int i = 0; i < extra; ++i) {
        const int u = pick(0, inst.vertex_count - 1);
        const int v = pick(0, inst.vertex_count - 1);
        if (u == v) continue;
        inst.edges.push_back({u, v, weight(rng)});
    }
    canonicalize_edges(inst.edges, inst.vertex_count);

    // Each color lands on one guaranteed non-start vertex plus random extras.
    for (int c = 0; c < inst.color_count; ++c) {
        int host = pick(0, inst.vertex_count - 1);
        while (host == inst.start)
            host = pick(0, inst.vertex_count - 1);
        inst.colors[host].push_back(c);
        const int extras = pick(0, 2);
        for (int i = 0; i < extras; ++i) inst.colors[pick(0, inst.vertex_count - 1)].push_back(c);
    }
    if (color_start && pick(0, 3) == 0 && inst.color_count > 1)
        inst.colors[inst.start].push_back(pick(0, inst.color_count - 1));
    for (auto& cs : inst.colors) {
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    }
    inst.quota = pick(0, inst.color_count);
    inst.validate();
    return inst;
}

/// Floyd-Warshall distances; the independent check for the metric closure.
inline std::vector<std::vector<double>> floyd_warshall(const InspectionInstance& inst) {
    const double inf = 1e100;
    std::vector<std::vector<double>> d(inst.vertex_count,
                                       std::vector<double>(inst.vertex_count, inf));
    for (int v = 0; v < inst.vertex_count; ++v) d[v][v] = 0.0;
    for (const Edge& e : inst.edges) {
        d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
        d[e.v][e.u] = std::min(d[e.v][e.u], e.weight);
    }
    for (int k = 0; k < inst.vertex_count; ++k)
        for (int i = 0; i < inst.vertex_count; ++i)
            for (int j = 0; j < inst.vertex_count; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

/// The star from the tightness argument: start = 0 at the center, leaves
/// 1..t each with a unique color, leaf t+1 holding `t` separate colors, unit
/// weights. Vertex numbering makes the greedy tie-break adversarial.
inline InspectionInstance tightness_star(int t) {
    InspectionInstance inst;
    inst.vertex_count = t + 2;
    inst.color_count = 2 * t;
    inst.start = 0;
    inst.quota = t;
    inst.colors.assign(inst.vertex_count, {});
    for (int leaf = 1; leaf <= t; ++leaf) {
        inst.edges.push_back({0, leaf, 1.0});
        inst.colors[leaf] = {leaf - 1};
    }
    inst.edges.push_back({0, t + 1, 1.0});
    for (int c = t; c < 2 * t; ++c) inst.colors[t + 1].push_back(c);
    inst.validate();
    return inst;
}

/// Path to the bundled MILP adapter when it can run, empty otherwise.
inline std::string external_backend_path() {
    std::string script;
    if (const char* dir = std::getenv("GI_TOOLS_DIR")) script = std::string(dir) + "/gi_milp_backend.py";
    else if (const char* env = std::getenv("GI_BACKEND_PATH")) script = env;
    if (script.empty()) return "";
    const std::string probe =
        "python3 -c 'from scipy.optimize import milp' >/dev/null 2>&1";
    if (std::system(probe.c_str()) != 0) return "";
    return script;
}

inline std::unique_ptr<SolverBackend> external_backend_or_null() {
    const std::string path = external_backend_path();
    if (path.empty()) return nullptr;
    return std::make_unique<ExternalProcessBackend>(path);
}

}  // namespace gi::test
