#pragma once

#include <vector>

#include "gi/ilp_backend.hpp"
#include "gi/instance.hpp"
#include "gi/metric_closure.hpp"
#include "gi/walk.hpp"

namespace gi {

struct BoundReport {
    int quota = 0;
    double upper = 0.0;  // weight of the witness walk
    double lower = 0.0;  // LP relaxation objective
    Walk witness;        // collects at least `quota` colors
};

/// Steiner-tree doubling upper bound: greedily pick the new-color vertices
/// closest to the start until `quota` colors are covered, 2-approximate a
/// Steiner tree on them, and walk every tree edge twice. The result collects
/// at least `quota` colors and weighs at most quota * opt.
Walk algorithm_st(const InspectionInstance& inst, const MetricClosure& mc, int quota);
Walk algorithm_st(const InspectionInstance& inst, const MetricClosure& mc);

/// One report per quota. Upper bounds use the fact that a walk certifying a
/// larger quota also certifies every smaller one, so the sequence is
/// nondecreasing in the quota.
std::vector<BoundReport> bound_sweep(const InspectionInstance& inst, const MetricClosure& mc,
                                     const std::vector<int>& quotas, SolverBackend& backend);

}  // namespace gi
