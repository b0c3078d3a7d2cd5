#pragma once

#include <chrono>
#include <optional>
#include <utility>
#include <vector>

#include "gi/instance.hpp"
#include "gi/metric_closure.hpp"
#include "gi/multigraph.hpp"
#include "gi/walk.hpp"

namespace gi {

/// Guard rails for the brute-force reference solvers.
struct OracleLimits {
    int max_vertices = 12;
    int max_colors = 8;
    long long max_nodes = 10'000'000;
};

struct BruteForceResult {
    Walk walk;
    bool optimal = true;  // false when the deadline cut the search short
};

/// Exhaustive reference for the inspection problem: enumerates closure
/// sequences where every step collects a new color, with branch-and-bound
/// pruning. Independent of the production solvers.
Walk brute_force_gi(const InspectionInstance& inst, const MetricClosure& mc,
                    const OracleLimits& limits = {});

/// Deadline-aware variant that reports the incumbent when interrupted.
BruteForceResult brute_force_gi_ex(
    const InspectionInstance& inst, const MetricClosure& mc, const OracleLimits& limits,
    std::optional<std::chrono::steady_clock::time_point> deadline);

/// Exhaustive minimum-weight connected spanning Eulerian submultigraph:
/// enumerates the cycle space for the odd-usage part and completes
/// connectivity with a cheapest set of doubled edges.
WalkMultigraph brute_force_mses(const WalkMultigraph& g, const OracleLimits& limits = {});

/// Exhaustive Hamiltonian-cycle test on a simple graph.
bool hamiltonian_check(int vertex_count, const std::vector<std::pair<int, int>>& edges,
                       const OracleLimits& limits = {});

}  // namespace gi
