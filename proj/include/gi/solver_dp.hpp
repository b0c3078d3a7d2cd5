#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "gi/instance.hpp"
#include "gi/metric_closure.hpp"
#include "gi/walk.hpp"

namespace gi {

struct DpOptions {
    int max_colors = 25;  // bitmask width cap
    int workers = 1;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Colors in the order they must be collected.
struct ColorOrder {
    std::vector<int> colors;
};

/// Disjoint color sets, processed in sequence.
struct BucketSequence {
    std::vector<std::vector<int>> buckets;
};

/// Subset-indexed table T[S][v] = minimum weight of a walk from the start to
/// v (in the metric closure) collecting at least the colors in S. Rows exist
/// only for vertices that carry a working color; entries whose subset misses
/// the vertex's colors hold the infinity sentinel. Filled layer by layer in
/// increasing subset cardinality; layers above the requested quota are never
/// allocated.
class DpTable {
public:
    DpTable(const InspectionInstance& inst, const MetricClosure& mc, int quota,
            const DpOptions& opts = {});

    static constexpr double kUnset = std::numeric_limits<double>::max();

    int working_color_count() const { return static_cast<int>(working_colors_.size()); }
    const std::vector<int>& working_colors() const { return working_colors_; }  // bit -> color id
    const std::vector<int>& table_vertices() const { return vertices_; }        // row -> vertex id
    uint32_t vertex_mask(int row) const { return vertex_mask_[row]; }
    int filled_quota() const { return filled_quota_; }

    /// Table value for (row, subset); kUnset when the entry is invalid.
    double value(int row, uint32_t subset) const;
    /// Predecessor row for (row, subset); -1 means the start vertex. The
    /// predecessor subset is always subset & ~vertex_mask(row).
    int parent(int row, uint32_t subset) const;

    struct Best {
        double weight = kUnset;  // closed-walk weight including the hop back to start
        int row = -1;
        uint32_t subset = 0;
    };
    /// Minimum closed-walk weight over entries with exactly `quota` colors.
    std::optional<Best> best_for_quota(int quota) const;

    /// Closure-hop sequence start .. v .. start for a table entry.
    std::vector<int> closure_sequence(int row, uint32_t subset) const;

private:
    friend struct DpFill;
    const MetricClosure* mc_ = nullptr;
    int start_ = 0;
    std::vector<int> working_colors_;
    std::vector<int> vertices_;
    std::vector<uint32_t> vertex_mask_;
    std::vector<double> dist_;    // row-major among table vertices
    std::vector<double> dist_s_;  // start <-> table vertex
    std::vector<uint32_t> rank_;  // subset -> index within its cardinality layer
    std::vector<std::vector<uint32_t>> layer_subsets_;
    std::vector<std::vector<double>> values_;
    std::vector<std::vector<int32_t>> parents_;
    int filled_quota_ = 0;

    void fill(const DpOptions& opts);
};

/// Exact solver: minimum-weight closed walk collecting at least inst.quota
/// colors, expanded into the original graph.
Walk solve_dp(const InspectionInstance& inst, const MetricClosure& mc, const DpOptions& opts = {});

/// Minimum-weight closed walk collecting the given colors in order (each
/// color is collected no later than its successors). Polynomial time.
Walk solve_fixed_order(const InspectionInstance& inst, const MetricClosure& mc,
                       const ColorOrder& order);

/// Solves each bucket to optimality with quota = bucket size and
/// concatenates the per-bucket closed tours at the start vertex.
Walk solve_bucketed(const InspectionInstance& inst, const MetricClosure& mc,
                    const BucketSequence& buckets, const DpOptions& opts = {});

}  // namespace gi
