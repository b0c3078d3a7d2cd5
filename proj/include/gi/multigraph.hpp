#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gi/instance.hpp"
#include "gi/walk.hpp"

namespace gi {

/// Loopless multigraph given by per-simple-edge multiplicities; encodes a
/// closed walk as an edge multiset (the Eulerian view of a walk).
struct WalkMultigraph {
    int vertex_count = 0;

    struct EdgeUse {
        int mult = 0;
        double weight = 0.0;
    };
    // Keyed by (min(u,v), max(u,v)); deterministic iteration order.
    std::map<std::pair<int, int>, EdgeUse> edges;

    void add_edge(int u, int v, double weight, int mult = 1);
    int multiplicity(int u, int v) const;

    /// Sum of mult * weight over all edges.
    double total_weight() const;
    /// Number of edge copies (sum of multiplicities).
    int total_multiplicity() const;

    /// Per-vertex degree counting multiplicity.
    std::vector<int> degrees() const;

    /// Vertices with at least one incident edge copy.
    std::vector<int> support_vertices() const;

    /// True when the support is connected and every degree is even.
    bool eulerian() const;

    /// True when the support is connected and covers every vertex in `cover`.
    bool support_connected_covering(const std::vector<int>& cover) const;
};

bool is_eulerian(const WalkMultigraph& g);

/// Closed sequence traversing every edge copy exactly once (Hierholzer).
std::vector<int> euler_tour(const WalkMultigraph& g, int start);

WalkMultigraph walk_to_multigraph(const InspectionInstance& inst, const Walk& walk);

}  // namespace gi
