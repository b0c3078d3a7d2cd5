#pragma once

#include <vector>

#include "gi/instance.hpp"
#include "gi/walk.hpp"

namespace gi {

/// All-pairs shortest paths plus per-source predecessor trees, so any hop in
/// the complete metric graph can be expanded into a concrete path.
class MetricClosure {
public:
    static MetricClosure compute(const InspectionInstance& inst, int workers = 1);

    int size() const { return n_; }
    double dist(int u, int v) const { return dist_[static_cast<size_t>(u) * n_ + v]; }

    /// Path from u to v (inclusive of both endpoints).
    std::vector<int> path(int u, int v) const;

    /// Appends the path u -> v to out, excluding u itself.
    void append_path(int u, int v, std::vector<int>& out) const;

private:
    int n_ = 0;
    std::vector<double> dist_;   // n*n
    std::vector<int> parent_;    // parent_[src*n + v]: predecessor of v on the src tree
};

/// Realizes a sequence of metric-closure hops (starting and ending at the
/// instance start) as a walk in the original graph.
Walk expand_closure_walk(const InspectionInstance& inst, const std::vector<int>& seq,
                         const MetricClosure& mc);

}  // namespace gi
