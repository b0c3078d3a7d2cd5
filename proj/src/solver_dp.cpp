#include "gi/solver_dp.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <string>

#include "gi/parallel.hpp"

namespace gi {

namespace {

void require_normalized(const InspectionInstance& inst) {
    if (!inst.colors[inst.start].empty())
        throw Error(ErrorCode::InvalidId, "solver requires a normalized instance (col(start) empty)");
}

}  // namespace

DpTable::DpTable(const InspectionInstance& inst, const MetricClosure& mc, int quota,
                 const DpOptions& opts) {
    require_normalized(inst);
    mc_ = &mc;
    start_ = inst.start;
    working_colors_ = inst.placed_colors();
    const int k = static_cast<int>(working_colors_.size());
    if (k > opts.max_colors)
        throw Error(ErrorCode::TooManyColors, std::to_string(k) + " colors exceed the bitmask cap of " +
                                                  std::to_string(opts.max_colors));
    if (quota > k)
        throw Error(ErrorCode::InfeasibleQuota,
                    "quota " + std::to_string(quota) + " exceeds the " + std::to_string(k) +
                        " collectible colors");
    filled_quota_ = quota;

    std::vector<int> color_bit(inst.color_count, -1);
    for (int b = 0; b < k; ++b) color_bit[working_colors_[b]] = b;
    for (int v = 0; v < inst.vertex_count; ++v) {
        if (v == inst.start || inst.colors[v].empty()) continue;
        uint32_t mask = 0;
        for (int c : inst.colors[v]) mask |= uint32_t{1} << color_bit[c];
        vertices_.push_back(v);
        vertex_mask_.push_back(mask);
    }

    const size_t nc = vertices_.size();
    dist_.resize(nc * nc);
    dist_s_.resize(nc);
    for (size_t i = 0; i < nc; ++i) {
        dist_s_[i] = mc.dist(start_, vertices_[i]);
        for (size_t j = 0; j < nc; ++j) dist_[i * nc + j] = mc.dist(vertices_[i], vertices_[j]);
    }

    // Subsets grouped by cardinality; rank_ gives the index within a layer.
    layer_subsets_.resize(quota + 1);
    rank_.assign(size_t{1} << k, 0);
    for (uint32_t s = 0; s < (uint32_t{1} << k); ++s) {
        const int pc = std::popcount(s);
        if (pc > quota) continue;
        rank_[s] = static_cast<uint32_t>(layer_subsets_[pc].size());
        layer_subsets_[pc].push_back(s);
    }

    fill(opts);
}

void DpTable::fill(const DpOptions& opts) {
    const size_t nc = vertices_.size();
    values_.resize(filled_quota_ + 1);
    parents_.resize(filled_quota_ + 1);
    std::atomic<bool> expired{false};
    for (int layer = 1; layer <= filled_quota_; ++layer) {
        const auto& subsets = layer_subsets_[layer];
        values_[layer].assign(subsets.size() * nc, kUnset);
        parents_[layer].assign(subsets.size() * nc, -2);
        parallel_for(subsets.size(), opts.workers, [&](size_t si) {
            if (opts.deadline && (si & 63) == 0) {
                if (expired.load(std::memory_order_relaxed)) return;
                if (std::chrono::steady_clock::now() > *opts.deadline) {
                    expired.store(true, std::memory_order_relaxed);
                    return;
                }
            }
            if (expired.load(std::memory_order_relaxed)) return;
            const uint32_t subset = subsets[si];
            double* row = &values_[layer][si * nc];
            int32_t* prow = &parents_[layer][si * nc];
            for (size_t vi = 0; vi < nc; ++vi) {
                const uint32_t mask = vertex_mask_[vi];
                if ((mask & subset) == 0) continue;
                const uint32_t prev_subset = subset & ~mask;
                if (prev_subset == 0) {
                    row[vi] = dist_s_[vi];
                    prow[vi] = -1;
                    continue;
                }
                const int prev_layer = std::popcount(prev_subset);
                const double* prev = &values_[prev_layer][size_t{rank_[prev_subset]} * nc];
                const double* dv = &dist_[vi * nc];
                double best = kUnset;
                int32_t best_u = -2;
                for (size_t u = 0; u < nc; ++u) {
                    const double cand = prev[u] + dv[u];
                    if (cand < best) {
                        best = cand;
                        best_u = static_cast<int32_t>(u);
                    }
                }
                row[vi] = best;
                prow[vi] = best_u;
            }
        });
        if (expired.load()) throw Error(ErrorCode::Timeout, "dp fill exceeded the deadline");
    }
}

double DpTable::value(int row, uint32_t subset) const {
    const int layer = std::popcount(subset);
    if (layer == 0 || layer > filled_quota_) return kUnset;
    return values_[layer][size_t{rank_[subset]} * vertices_.size() + row];
}

int DpTable::parent(int row, uint32_t subset) const {
    const int layer = std::popcount(subset);
    return parents_[layer][size_t{rank_[subset]} * vertices_.size() + row];
}

std::optional<DpTable::Best> DpTable::best_for_quota(int quota) const {
    if (quota == 0) return Best{0.0, -1, 0};
    if (quota > filled_quota_) return std::nullopt;
    const size_t nc = vertices_.size();
    Best best;
    const auto& subsets = layer_subsets_[quota];
    for (size_t si = 0; si < subsets.size(); ++si) {
        const double* row = &values_[quota][si * nc];
        for (size_t vi = 0; vi < nc; ++vi) {
            if (row[vi] == kUnset) continue;
            const double closed = row[vi] + dist_s_[vi];
            if (closed < best.weight) {
                best.weight = closed;
                best.row = static_cast<int>(vi);
                best.subset = subsets[si];
            }
        }
    }
    if (best.row < 0 && quota > 0) return std::nullopt;
    return best;
}

std::vector<int> DpTable::closure_sequence(int row, uint32_t subset) const {
    std::vector<int> chain;
    int r = row;
    uint32_t s = subset;
    while (r >= 0) {
        chain.push_back(vertices_[r]);
        const int p = parent(r, s);
        s &= ~vertex_mask_[r];
        r = p;
    }
    std::vector<int> seq{start_};
    seq.insert(seq.end(), chain.rbegin(), chain.rend());
    seq.push_back(start_);
    return seq;
}

Walk solve_dp(const InspectionInstance& inst, const MetricClosure& mc, const DpOptions& opts) {
    require_normalized(inst);
    if (inst.quota == 0) return make_walk(inst, {inst.start});
    DpTable table(inst, mc, inst.quota, opts);
    const auto best = table.best_for_quota(inst.quota);
    if (!best)
        throw Error(ErrorCode::InfeasibleQuota, "no walk collects the requested number of colors");
    return expand_closure_walk(inst, table.closure_sequence(best->row, best->subset), mc);
}

Walk solve_fixed_order(const InspectionInstance& inst, const MetricClosure& mc,
                       const ColorOrder& order) {
    require_normalized(inst);
    const int n = inst.vertex_count;
    const int k = static_cast<int>(order.colors.size());
    if (k == 0) return make_walk(inst, {inst.start});

    std::vector<std::vector<char>> has_color(k, std::vector<char>(n, 0));
    for (int i = 0; i < k; ++i) {
        const int c = order.colors[i];
        if (c < 0 || c >= inst.color_count) throw Error(ErrorCode::InvalidId, "order color out of range");
        for (int v = 0; v < n; ++v)
            if (std::binary_search(inst.colors[v].begin(), inst.colors[v].end(), c)) has_color[i][v] = 1;
    }

    constexpr double kInfValue = std::numeric_limits<double>::max();
    // walk_to[v]: cheapest walk s -> v collecting the first i colors in order;
    // at_color[v]: same, with v additionally carrying color i.
    std::vector<double> walk_to(n), at_color(n);
    std::vector<std::vector<int32_t>> parent_at(k), parent_walk(k);
    for (int v = 0; v < n; ++v) walk_to[v] = mc.dist(inst.start, v);

    for (int i = 0; i < k; ++i) {
        parent_at[i].assign(n, -1);
        parent_walk[i].assign(n, -1);
        at_color.assign(n, kInfValue);
        for (int v = 0; v < n; ++v) {
            if (!has_color[i][v]) continue;
            double best = kInfValue;
            int32_t best_u = -1;
            for (int u = 0; u < n; ++u) {
                if (walk_to[u] == kInfValue) continue;
                const double cand = walk_to[u] + mc.dist(u, v);
                if (cand < best) {
                    best = cand;
                    best_u = u;
                }
            }
            at_color[v] = best;
            parent_at[i][v] = best_u;
        }
        std::vector<double> next(n, kInfValue);
        for (int v = 0; v < n; ++v) {
            double best = kInfValue;
            int32_t best_u = -1;
            for (int u = 0; u < n; ++u) {
                if (at_color[u] == kInfValue) continue;
                const double cand = at_color[u] + mc.dist(u, v);
                if (cand < best) {
                    best = cand;
                    best_u = u;
                }
            }
            next[v] = best;
            parent_walk[i][v] = best_u;
        }
        walk_to = std::move(next);
    }

    if (walk_to[inst.start] == kInfValue)
        throw Error(ErrorCode::InfeasibleQuota, "an ordered color occurs at no vertex");

    // Backtrack alternating walk_to / at_color states, dropping stationary hops.
    std::vector<int> rev{inst.start};
    int v = inst.start;
    for (int i = k - 1; i >= 0; --i) {
        const int w = parent_walk[i][v];
        rev.push_back(w);
        const int u = parent_at[i][w];
        rev.push_back(u);
        v = u;
    }
    rev.push_back(inst.start);
    std::vector<int> seq;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        if (seq.empty() || seq.back() != *it) seq.push_back(*it);
    if (seq.size() == 1) seq.push_back(inst.start);
    return expand_closure_walk(inst, seq, mc);
}

Walk solve_bucketed(const InspectionInstance& inst, const MetricClosure& mc,
                    const BucketSequence& buckets, const DpOptions& opts) {
    require_normalized(inst);
    std::vector<char> seen(inst.color_count, 0);
    for (const auto& bucket : buckets.buckets)
        for (int c : bucket) {
            if (c < 0 || c >= inst.color_count) throw Error(ErrorCode::InvalidId, "bucket color out of range");
            if (seen[c]) throw Error(ErrorCode::InvalidId, "buckets must be disjoint");
            seen[c] = 1;
        }

    std::vector<int> seq{inst.start};
    for (const auto& bucket : buckets.buckets) {
        InspectionInstance part = inst;
        std::vector<char> mask(inst.color_count, 0);
        for (int c : bucket) mask[c] = 1;
        for (auto& cs : part.colors)
            cs.erase(std::remove_if(cs.begin(), cs.end(), [&](int c) { return !mask[c]; }), cs.end());
        part.quota = static_cast<int>(part.placed_colors().size());
        if (part.quota < static_cast<int>(bucket.size()))
            throw Error(ErrorCode::InfeasibleQuota, "a bucket color occurs at no vertex");
        Walk tour = solve_dp(part, mc, opts);
        seq.insert(seq.end(), tour.vertices.begin() + 1, tour.vertices.end());
    }
    return make_walk(inst, std::move(seq));
}

}  // namespace gi
