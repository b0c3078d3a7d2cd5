#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "gi/error.hpp"

namespace gi {

struct Edge {
    int u = 0;
    int v = 0;
    double weight = 0.0;
};

/// Problem input: an undirected edge-weighted graph whose vertices carry sets
/// of colors, a start vertex and a quota of distinct colors to collect.
struct InspectionInstance {
    int vertex_count = 0;
    std::vector<Edge> edges;              // simple edges, u != v, weight >= 0
    int color_count = 0;                  // size of the color universe
    std::vector<std::vector<int>> colors; // per-vertex sorted color ids
    int start = 0;
    int quota = 0;
    // Optional per-color position used as a similarity embedding.
    std::vector<std::array<double, 3>> color_meta;

    std::vector<std::vector<std::pair<int, double>>> adjacency() const;

    /// Colors that occur on at least one vertex (sorted, no duplicates).
    std::vector<int> placed_colors() const;

    /// Basic structural validation; throws on violated invariants.
    void validate() const;
};

bool is_connected(const InspectionInstance& inst);

/// Collapses parallel edges to the minimum weight and rejects self-loops.
/// Returns the number of duplicates dropped.
int canonicalize_edges(std::vector<Edge>& edges, int vertex_count);

struct NormalizedInstance {
    InspectionInstance instance;    // col(start) == {} and quota adjusted
    std::vector<int> start_colors;  // colors removed from the universe view
    int quota_drop = 0;
};

/// Removes the start-visible colors from every vertex and lowers the quota
/// accordingly; records what was removed so coverage can be reported against
/// the original color set.
NormalizedInstance normalize_instance(const InspectionInstance& raw);

/// Kruskal MST over the instance edges; tie-break on (weight, u, v).
std::vector<Edge> minimum_spanning_tree(const InspectionInstance& inst);

}  // namespace gi
