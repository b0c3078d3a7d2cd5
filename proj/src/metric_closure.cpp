#include "gi/metric_closure.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "gi/parallel.hpp"

namespace gi {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MetricClosure MetricClosure::compute(const InspectionInstance& inst, int workers) {
    if (!is_connected(inst)) throw Error(ErrorCode::DisconnectedGraph, "metric closure needs a connected graph");
    MetricClosure mc;
    const int n = inst.vertex_count;
    mc.n_ = n;
    mc.dist_.assign(static_cast<size_t>(n) * n, kInf);
    mc.parent_.assign(static_cast<size_t>(n) * n, -1);
    const auto adj = inst.adjacency();

    parallel_for(static_cast<size_t>(n), workers, [&](size_t src_idx) {
        const int src = static_cast<int>(src_idx);
        double* dist = &mc.dist_[src_idx * n];
        int* parent = &mc.parent_[src_idx * n];
        dist[src] = 0.0;
        // (distance, vertex) min-heap; ties resolve to the smaller vertex id,
        // and equal-distance relaxations keep the smaller predecessor.
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        heap.push({0.0, src});
        std::vector<char> done(n, 0);
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (done[v]) continue;
            done[v] = 1;
            for (auto [u, w] : adj[v]) {
                const double nd = d + w;
                if (nd < dist[u] || (nd == dist[u] && parent[u] > v)) {
                    dist[u] = nd;
                    parent[u] = v;
                    if (!done[u]) heap.push({nd, u});
                }
            }
        }
    }, 1);
    return mc;
}

std::vector<int> MetricClosure::path(int u, int v) const {
    std::vector<int> out{u};
    append_path(u, v, out);
    return out;
}

void MetricClosure::append_path(int u, int v, std::vector<int>& out) const {
    if (u == v) return;
    const int* parent = &parent_[static_cast<size_t>(u) * n_];
    std::vector<int> rev;
    for (int cur = v; cur != u; cur = parent[cur]) {
        if (cur < 0) throw Error(ErrorCode::InvalidId, "no path recorded");
        rev.push_back(cur);
    }
    out.insert(out.end(), rev.rbegin(), rev.rend());
}

Walk expand_closure_walk(const InspectionInstance& inst, const std::vector<int>& seq,
                         const MetricClosure& mc) {
    if (seq.empty() || seq.front() != inst.start || seq.back() != inst.start)
        throw Error(ErrorCode::InvalidId, "closure sequence must start and end at the start vertex");
    std::vector<int> vertices{seq.front()};
    for (size_t i = 1; i < seq.size(); ++i) mc.append_path(seq[i - 1], seq[i], vertices);
    return make_walk(inst, std::move(vertices));
}

}  // namespace gi
