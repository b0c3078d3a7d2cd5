#include "gi/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace gi {

SimilarityFn euclidean_similarity(const InspectionInstance& inst) {
    if (inst.color_meta.empty())
        throw Error(ErrorCode::NoEmbedding, "instance carries no color positions");
    const auto positions = inst.color_meta;
    return [positions](int a, int b) {
        double sq = 0.0;
        for (int d = 0; d < 3; ++d) {
            const double diff = positions[a][d] - positions[b][d];
            sq += diff * diff;
        }
        return std::sqrt(sq);
    };
}

namespace {

std::vector<int> pool_without(const std::vector<int>& universe, const std::vector<int>& col0) {
    const std::set<int> excluded(col0.begin(), col0.end());
    std::vector<int> pool;
    for (int c : universe)
        if (!excluded.count(c)) pool.push_back(c);
    return pool;
}

void require_k(int k, size_t pool_size) {
    if (k < 0 || static_cast<size_t>(k) > pool_size)
        throw Error(ErrorCode::KTooLarge, "k=" + std::to_string(k) + " exceeds the " +
                                              std::to_string(pool_size) + " available colors");
}

}  // namespace

ReductionResult rand_md(const std::vector<int>& universe, const std::vector<int>& col0, int k,
                        uint64_t seed) {
    std::vector<int> pool = pool_without(universe, col0);
    require_k(k, pool.size());
    std::mt19937_64 rng(seed);
    ReductionResult out;
    out.method = "rand";
    out.seed = seed;
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
        out.selected.push_back(pool[i]);
    }
    return out;
}

ReductionResult greedy_md(const std::vector<int>& universe, const std::vector<int>& col0,
                          const SimilarityFn& f, int k) {
    std::vector<int> pool = pool_without(universe, col0);
    require_k(k, pool.size());
    ReductionResult out;
    out.method = "greedy";
    if (k == 0) return out;

    // min distance from each pool color to anything already chosen (col0 or
    // selected); the next pick maximizes it.
    std::vector<double> min_dist(pool.size(), std::numeric_limits<double>::infinity());
    std::vector<char> taken(pool.size(), 0);
    int remaining = k;
    if (col0.empty()) {
        if (pool.empty()) throw Error(ErrorCode::EmptyInitNoFallback, "no colors to seed from");
        // Fallback seed: the smallest color id counts as the first pick.
        out.selected.push_back(pool.front());
        taken[0] = 1;
        --remaining;
        for (size_t i = 0; i < pool.size(); ++i) min_dist[i] = f(pool[i], pool.front());
    } else {
        for (size_t i = 0; i < pool.size(); ++i)
            for (int c : col0) min_dist[i] = std::min(min_dist[i], f(pool[i], c));
    }
    while (remaining-- > 0) {
        int best = -1;
        double best_dist = -1.0;
        for (size_t i = 0; i < pool.size(); ++i) {
            if (taken[i]) continue;
            if (min_dist[i] > best_dist) {
                best_dist = min_dist[i];
                best = static_cast<int>(i);
            }
        }
        taken[best] = 1;
        out.selected.push_back(pool[best]);
        for (size_t i = 0; i < pool.size(); ++i)
            if (!taken[i]) min_dist[i] = std::min(min_dist[i], f(pool[i], pool[best]));
    }
    return out;
}

ReductionResult outlier_md(const std::vector<int>& universe, const std::vector<int>& col0,
                           const SimilarityFn& f, int k, double r) {
    if (r < 1.0) throw Error(ErrorCode::KTooLarge, "outlier scaling needs r >= 1");
    const int wide = static_cast<int>(std::floor(r * k));
    ReductionResult reps = greedy_md(universe, col0, f, wide);
    require_k(k, reps.selected.size());

    // Cluster every color to its most similar representative; ties go to the
    // earlier-selected one.
    std::vector<int> cluster_size(reps.selected.size(), 1);
    for (int c : universe) {
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < reps.selected.size(); ++i) {
            const double d = f(c, reps.selected[i]);
            if (d < best_dist) {
                best_dist = d;
                best = static_cast<int>(i);
            }
        }
        ++cluster_size[best];
    }
    std::vector<size_t> order(reps.selected.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return cluster_size[a] > cluster_size[b]; });
    ReductionResult out;
    out.method = "outlier";
    for (int i = 0; i < k; ++i) out.selected.push_back(reps.selected[order[i]]);
    return out;
}

ReductionResult metric_md(const std::vector<int>& universe, const std::vector<int>& col0,
                          const std::vector<std::array<double, 3>>& positions, int k) {
    if (positions.empty()) throw Error(ErrorCode::NoEmbedding, "metric_md needs color positions");
    SimilarityFn f = [&positions](int a, int b) {
        double sq = 0.0;
        for (int d = 0; d < 3; ++d) {
            const double diff = positions[a][d] - positions[b][d];
            sq += diff * diff;
        }
        return std::sqrt(sq);
    };
    const std::vector<int> pool = pool_without(universe, col0);
    require_k(k, pool.size());
    ReductionResult seeds = greedy_md(universe, col0, f, k);

    // Lloyd iterations on the pool, seeded by the greedy picks.
    std::vector<std::array<double, 3>> centroids;
    for (int c : seeds.selected) centroids.push_back(positions[c]);
    std::vector<int> assign(pool.size(), 0);
    constexpr int kMaxIterations = 100;
    constexpr double kShiftTolerance = 1e-6;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        for (size_t i = 0; i < pool.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (size_t j = 0; j < centroids.size(); ++j) {
                double sq = 0.0;
                for (int d = 0; d < 3; ++d) {
                    const double diff = positions[pool[i]][d] - centroids[j][d];
                    sq += diff * diff;
                }
                if (sq < best) {
                    best = sq;
                    assign[i] = static_cast<int>(j);
                }
            }
        }
        double shift = 0.0;
        for (size_t j = 0; j < centroids.size(); ++j) {
            std::array<double, 3> mean{0, 0, 0};
            int count = 0;
            for (size_t i = 0; i < pool.size(); ++i) {
                if (assign[i] != static_cast<int>(j)) continue;
                ++count;
                for (int d = 0; d < 3; ++d) mean[d] += positions[pool[i]][d];
            }
            if (count == 0) continue;  // empty cluster keeps its centroid
            for (int d = 0; d < 3; ++d) mean[d] /= count;
            double sq = 0.0;
            for (int d = 0; d < 3; ++d) {
                const double diff = mean[d] - centroids[j][d];
                sq += diff * diff;
            }
            shift = std::max(shift, std::sqrt(sq));
            centroids[j] = mean;
        }
        if (shift < kShiftTolerance) break;
    }

    // Represent each centroid by the nearest color not yet chosen.
    ReductionResult out;
    out.method = "metric";
    std::set<int> chosen;
    for (const auto& centroid : centroids) {
        int best = -1;
        double best_sq = std::numeric_limits<double>::infinity();
        for (int c : pool) {
            if (chosen.count(c)) continue;
            double sq = 0.0;
            for (int d = 0; d < 3; ++d) {
                const double diff = positions[c][d] - centroid[d];
                sq += diff * diff;
            }
            if (sq < best_sq) {
                best_sq = sq;
                best = c;
            }
        }
        chosen.insert(best);
        out.selected.push_back(best);
    }
    return out;
}

std::vector<std::vector<int>> ordered_part(const std::vector<int>& ordered_colors, int parts) {
    if (parts < 1) throw Error(ErrorCode::KTooLarge, "partition count must be positive");
    const size_t n = ordered_colors.size();
    const size_t base = n / parts;
    const size_t remainder = n % parts;
    std::vector<std::vector<int>> out(parts);
    size_t at = 0;
    for (int p = 0; p < parts; ++p) {
        const size_t take = base + (static_cast<size_t>(p) < remainder ? 1 : 0);
        out[p].assign(ordered_colors.begin() + at, ordered_colors.begin() + at + take);
        at += take;
    }
    return out;
}

std::vector<std::vector<int>> geometric_part(const std::vector<int>& universe,
                                             const std::vector<int>& col0, const SimilarityFn& f,
                                             int parts) {
    const ReductionResult reps = greedy_md(universe, col0, f, parts);
    std::vector<std::vector<int>> out(parts);
    for (int c : pool_without(universe, col0)) {
        int best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < reps.selected.size(); ++i) {
            const double d = f(c, reps.selected[i]);
            if (d < best_dist) {  // ties stay with the earlier representative
                best_dist = d;
                best = static_cast<int>(i);
            }
        }
        out[best].push_back(c);
    }
    return out;
}

ReductionMethod reduction_method_from(const std::string& name) {
    if (name == "rand") return ReductionMethod::Rand;
    if (name == "greedy") return ReductionMethod::Greedy;
    if (name == "outlier") return ReductionMethod::Outlier;
    if (name == "metric") return ReductionMethod::Metric;
    throw Error(ErrorCode::InvalidConfig, "unknown reduction method '" + name + "'");
}

PartitionStrategy partition_strategy_from(const std::string& name) {
    if (name == "ordered") return PartitionStrategy::Ordered;
    if (name == "geometric") return PartitionStrategy::Geometric;
    throw Error(ErrorCode::InvalidConfig, "unknown partition strategy '" + name + "'");
}

ReductionMode reduction_mode_from(const std::string& name) {
    if (name == "before") return ReductionMode::Before;
    if (name == "after") return ReductionMode::After;
    throw Error(ErrorCode::InvalidConfig, "unknown reduction mode '" + name + "'");
}

namespace {

ReductionResult run_reduction(const InspectionInstance& inst, const std::vector<int>& universe,
                              const std::vector<int>& col0, const ReductionPlan& plan, int k) {
    switch (plan.method) {
        case ReductionMethod::Rand:
            return rand_md(universe, col0, k, plan.seed);
        case ReductionMethod::Greedy:
            return greedy_md(universe, col0, euclidean_similarity(inst), k);
        case ReductionMethod::Outlier:
            return outlier_md(universe, col0, euclidean_similarity(inst), k, plan.r);
        case ReductionMethod::Metric:
            return metric_md(universe, col0, inst.color_meta, k);
    }
    throw Error(ErrorCode::InvalidConfig, "unknown reduction method");
}

InspectionInstance restrict_colors(const InspectionInstance& inst, const std::vector<int>& keep) {
    InspectionInstance part = inst;
    std::vector<char> kept(inst.color_count, 0);
    for (int c : keep) kept[c] = 1;
    for (auto& cs : part.colors)
        cs.erase(std::remove_if(cs.begin(), cs.end(), [&](int c) { return !kept[c]; }), cs.end());
    part.quota = static_cast<int>(keep.size());
    return part;
}

}  // namespace

PartitionedInstances reduce_then_partition(const InspectionInstance& inst,
                                           const ReductionPlan& plan) {
    if (plan.parts < 1) throw Error(ErrorCode::InvalidConfig, "partition count must be positive");
    // Work over colors that actually occur somewhere; the rest cannot be
    // collected by any walk.
    const std::vector<int> universe = inst.placed_colors();
    const std::vector<int>& col0 = inst.colors[inst.start];

    PartitionedInstances out;
    if (plan.mode == ReductionMode::After) {
        const int total = plan.parts * plan.k;
        const ReductionResult reduced = run_reduction(inst, universe, col0, plan, total);
        if (plan.partition == PartitionStrategy::Ordered) {
            out.part_colors = ordered_part(reduced.selected, plan.parts);
        } else {
            out.part_colors =
                geometric_part(reduced.selected, {}, euclidean_similarity(inst), plan.parts);
        }
    } else {
        std::vector<std::vector<int>> split;
        if (plan.partition == PartitionStrategy::Ordered) {
            std::vector<int> pool;
            const std::set<int> excluded(col0.begin(), col0.end());
            for (int c : universe)
                if (!excluded.count(c)) pool.push_back(c);
            split = ordered_part(pool, plan.parts);
        } else {
            split = geometric_part(universe, col0, euclidean_similarity(inst), plan.parts);
        }
        for (auto& subset : split) {
            const int k = std::min<int>(plan.k, static_cast<int>(subset.size()));
            out.part_colors.push_back(run_reduction(inst, subset, {}, plan, k).selected);
        }
    }
    for (const auto& colors : out.part_colors) out.parts.push_back(restrict_colors(inst, colors));
    return out;
}

}  // namespace gi
