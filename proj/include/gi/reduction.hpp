#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gi/instance.hpp"

namespace gi {

/// Pairwise color similarity; smaller means more similar. Symmetric with
/// f(c, c) == 0.
using SimilarityFn = std::function<double(int, int)>;

/// Euclidean distance on the instance's per-color positions.
SimilarityFn euclidean_similarity(const InspectionInstance& inst);

struct ReductionResult {
    std::vector<int> selected;  // exactly k colors, in selection order
    std::string method;
    uint64_t seed = 0;
};

/// Uniform sample without replacement from universe \ col0.
ReductionResult rand_md(const std::vector<int>& universe, const std::vector<int>& col0, int k,
                        uint64_t seed);

/// Gonzalez-style maximum dispersal: start from col0 (or the smallest color
/// when empty) and repeatedly add the color farthest from everything chosen.
ReductionResult greedy_md(const std::vector<int>& universe, const std::vector<int>& col0,
                          const SimilarityFn& f, int k);

/// greedy_md with floor(r*k) picks, then keep the representatives whose
/// nearest-color clusters are largest (outliers attract tiny clusters).
ReductionResult outlier_md(const std::vector<int>& universe, const std::vector<int>& col0,
                           const SimilarityFn& f, int k, double r);

/// greedy_md seeds Lloyd's k-means on the color positions; each final
/// centroid is represented by its nearest unchosen color.
ReductionResult metric_md(const std::vector<int>& universe, const std::vector<int>& col0,
                          const std::vector<std::array<double, 3>>& positions, int k);

/// Contiguous chunks; earlier chunks take the remainder.
std::vector<std::vector<int>> ordered_part(const std::vector<int>& ordered_colors, int parts);

/// greedy_md picks `parts` representatives; every color joins the most
/// similar one (ties to the earlier representative).
std::vector<std::vector<int>> geometric_part(const std::vector<int>& universe,
                                             const std::vector<int>& col0, const SimilarityFn& f,
                                             int parts);

enum class ReductionMethod { Rand, Greedy, Outlier, Metric };
enum class PartitionStrategy { Ordered, Geometric };
enum class ReductionMode { Before, After };

ReductionMethod reduction_method_from(const std::string& name);
PartitionStrategy partition_strategy_from(const std::string& name);
ReductionMode reduction_mode_from(const std::string& name);

struct ReductionPlan {
    ReductionMethod method = ReductionMethod::Greedy;
    int k = 10;
    int parts = 1;  // W
    double r = 2.0;
    uint64_t seed = 0;
    ReductionMode mode = ReductionMode::After;
    PartitionStrategy partition = PartitionStrategy::Ordered;
};

struct PartitionedInstances {
    std::vector<InspectionInstance> parts;        // share graph/weights/start
    std::vector<std::vector<int>> part_colors;    // colors assigned to each part
};

/// Pipeline step: color-reduce and split into `parts` instances, each with
/// quota equal to its color count. In after-mode the reduction picks
/// parts * k colors first; in before-mode the full set is partitioned and
/// each part reduced to k (clamped to the part's size).
PartitionedInstances reduce_then_partition(const InspectionInstance& inst, const ReductionPlan& plan);

}  // namespace gi
