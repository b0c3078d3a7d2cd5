#pragma once

#include <set>
#include <utility>
#include <vector>

#include "gi/ilp_backend.hpp"
#include "gi/instance.hpp"
#include "gi/multigraph.hpp"
#include "gi/walk.hpp"

namespace gi {

/// Closed walks sharing a start vertex, plus their union multigraph (which is
/// Eulerian by construction).
struct MergeInput {
    const InspectionInstance* inst = nullptr;
    std::vector<Walk> walks;
    WalkMultigraph unioned;

    static MergeInput build(const InspectionInstance& inst, std::vector<Walk> walks);
};

/// Concatenates the walks at the shared start; weight is the plain sum.
Walk concat_merge(const MergeInput& in);

/// Reduces every multiplicity >= 4 by twos; multiplicities end in {1,2,3}
/// and per-vertex parity is unchanged.
WalkMultigraph apply_rule1(WalkMultigraph g);

/// Edges that belong to every optimal spanning Eulerian subgraph. Covers the
/// two cheap cases (edges at multigraph-degree-2 vertices, doubled bridges);
/// `full_two_cuts` additionally tests every simple-edge pair by deletion.
std::set<std::pair<int, int>> find_undeletable(const WalkMultigraph& g, bool full_two_cuts = false);

/// Keep a spanning structure, then greedily pack and discard cycles from the
/// remaining copies in nonincreasing weight order.
Walk greedy_merge(const MergeInput& in);

/// Exact merge: inspection model on the union's underlying simple graph with
/// unique colors, full quota, and per-edge capacity rows for multiplicity-1
/// edges; solved on the given backend.
Walk exact_merge(const MergeInput& in, SolverBackend& backend, double time_limit_seconds = -1);

enum class MergeStrategy { Concat, Greedy, Exact };
MergeStrategy merge_strategy_from(const std::string& name);

}  // namespace gi
