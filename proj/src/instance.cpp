#include "gi/instance.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace gi {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
        case ErrorCode::QuotaExceedsColors: return "QuotaExceedsColors";
        case ErrorCode::TooManyColors: return "TooManyColors";
        case ErrorCode::InfeasibleQuota: return "InfeasibleQuota";
        case ErrorCode::BackendUnavailable: return "BackendUnavailable";
        case ErrorCode::ModelRejected: return "ModelRejected";
        case ErrorCode::Timeout: return "Timeout";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidId: return "InvalidId";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::KTooLarge: return "KTooLarge";
        case ErrorCode::NoEmbedding: return "NoEmbedding";
        case ErrorCode::EmptyInitNoFallback: return "EmptyInitNoFallback";
        case ErrorCode::LimitExceeded: return "LimitExceeded";
        case ErrorCode::CirculationDetected: return "CirculationDetected";
        case ErrorCode::DegenerateInstance: return "DegenerateInstance";
        case ErrorCode::NotEulerian: return "NotEulerian";
        case ErrorCode::StartOffSupport: return "StartOffSupport";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "UnknownError";
}

std::vector<std::vector<std::pair<int, double>>> InspectionInstance::adjacency() const {
    std::vector<std::vector<std::pair<int, double>>> adj(vertex_count);
    for (const Edge& e : edges) {
        adj[e.u].emplace_back(e.v, e.weight);
        adj[e.v].emplace_back(e.u, e.weight);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

std::vector<int> InspectionInstance::placed_colors() const {
    std::set<int> seen;
    for (const auto& cs : colors) seen.insert(cs.begin(), cs.end());
    return std::vector<int>(seen.begin(), seen.end());
}

void InspectionInstance::validate() const {
    if (vertex_count <= 0) throw Error(ErrorCode::InvalidId, "instance has no vertices");
    if (start < 0 || start >= vertex_count)
        throw Error(ErrorCode::InvalidId, "start vertex " + std::to_string(start) + " out of range");
    if (quota < 0 || quota > color_count)
        throw Error(ErrorCode::QuotaExceedsColors,
                    "quota " + std::to_string(quota) + " outside [0, " + std::to_string(color_count) + "]");
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
            throw Error(ErrorCode::InvalidId, "edge endpoint out of range");
        if (e.u == e.v) throw Error(ErrorCode::InvalidId, "self-loop on vertex " + std::to_string(e.u));
        if (e.weight < 0.0) throw Error(ErrorCode::NegativeWeight, "negative edge weight");
    }
    if (static_cast<int>(colors.size()) != vertex_count)
        throw Error(ErrorCode::InvalidId, "color table size does not match vertex count");
    for (const auto& cs : colors)
        for (int c : cs)
            if (c < 0 || c >= color_count) throw Error(ErrorCode::InvalidId, "color id out of range");
    if (!color_meta.empty() && static_cast<int>(color_meta.size()) != color_count)
        throw Error(ErrorCode::InvalidId, "color_meta size does not match color count");
}

bool is_connected(const InspectionInstance& inst) {
    if (inst.vertex_count == 0) return false;
    auto adj = inst.adjacency();
    std::vector<char> seen(inst.vertex_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [u, w] : adj[v]) {
            (void)w;
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == inst.vertex_count;
}

int canonicalize_edges(std::vector<Edge>& edges, int vertex_count) {
    std::map<std::pair<int, int>, double> best;
    int dropped = 0;
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
            throw Error(ErrorCode::InvalidId, "edge endpoint out of range");
        if (e.u == e.v) throw Error(ErrorCode::InvalidId, "self-loop on vertex " + std::to_string(e.u));
        if (e.weight < 0.0) throw Error(ErrorCode::NegativeWeight, "negative edge weight");
        auto key = std::minmax(e.u, e.v);
        auto it = best.find(key);
        if (it == best.end()) {
            best.emplace(key, e.weight);
        } else {
            it->second = std::min(it->second, e.weight);
            ++dropped;
        }
    }
    edges.clear();
    edges.reserve(best.size());
    for (const auto& [key, w] : best) edges.push_back({key.first, key.second, w});
    return dropped;
}

NormalizedInstance normalize_instance(const InspectionInstance& raw) {
    raw.validate();
    if (!is_connected(raw)) throw Error(ErrorCode::DisconnectedGraph, "input graph is not connected");
    if (raw.quota > raw.color_count)
        throw Error(ErrorCode::QuotaExceedsColors, "quota exceeds color universe");

    NormalizedInstance out;
    out.start_colors = raw.colors[raw.start];
    out.instance = raw;
    if (out.start_colors.empty()) {
        out.quota_drop = 0;
        return out;
    }

    const std::set<int> removed(out.start_colors.begin(), out.start_colors.end());
    for (auto& cs : out.instance.colors) {
        cs.erase(std::remove_if(cs.begin(), cs.end(), [&](int c) { return removed.count(c) > 0; }),
                 cs.end());
    }
    out.quota_drop = std::min<int>(raw.quota, static_cast<int>(removed.size()));
    out.instance.quota = raw.quota - out.quota_drop;
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace

std::vector<Edge> minimum_spanning_tree(const InspectionInstance& inst) {
    std::vector<Edge> sorted = inst.edges;
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    UnionFind uf(inst.vertex_count);
    std::vector<Edge> tree;
    for (const Edge& e : sorted)
        if (uf.unite(e.u, e.v)) tree.push_back(e);
    if (static_cast<int>(tree.size()) != inst.vertex_count - 1)
        throw Error(ErrorCode::DisconnectedGraph, "MST requires a connected graph");
    return tree;
}

}  // namespace gi
