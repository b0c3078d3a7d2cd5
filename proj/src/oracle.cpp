#include "gi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

namespace gi {

namespace {

struct GiSearch {
    const InspectionInstance& inst;
    const MetricClosure& mc;
    const OracleLimits& limits;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::vector<int> colored{};                 // vertices with at least one color, ascending
    std::vector<std::vector<int>> color_ids{};  // colors per colored vertex
    long long nodes = 0;
    bool interrupted = false;

    double best_weight = std::numeric_limits<double>::infinity();
    std::vector<int> best_seq{};
    std::vector<int> seq{};

    void run() {
        seq = {inst.start};
        // Start-visible colors come for free (the walk begins at s).
        std::set<int> collected(inst.colors[inst.start].begin(), inst.colors[inst.start].end());
        if (static_cast<int>(collected.size()) >= inst.quota) {
            best_weight = 0.0;
            best_seq = {inst.start};
            return;
        }
        descend(inst.start, collected, 0.0);
    }

    void descend(int at, std::set<int>& collected, double weight) {
        if (++nodes > limits.max_nodes)
            throw Error(ErrorCode::LimitExceeded, "oracle enumeration exceeded node limit");
        if (deadline && (nodes & 1023) == 0 && std::chrono::steady_clock::now() > *deadline) {
            interrupted = true;
            return;
        }
        if (static_cast<int>(collected.size()) >= inst.quota) {
            const double closed = weight + mc.dist(at, inst.start);
            if (closed < best_weight) {
                best_weight = closed;
                best_seq = seq;
                best_seq.push_back(inst.start);
            }
            // A heavier continuation cannot beat a closed candidate; still
            // explore (equal-weight zero edges), pruning handles the rest.
        }
        for (size_t ci = 0; ci < colored.size() && !interrupted; ++ci) {
            const int v = colored[ci];
            bool fresh = false;
            for (int c : color_ids[ci])
                if (!collected.count(c)) {
                    fresh = true;
                    break;
                }
            if (!fresh) continue;
            const double extended = weight + mc.dist(at, v);
            if (extended + mc.dist(v, inst.start) >= best_weight) continue;
            std::vector<int> added;
            for (int c : color_ids[ci])
                if (collected.insert(c).second) added.push_back(c);
            seq.push_back(v);
            descend(v, collected, extended);
            seq.pop_back();
            for (int c : added) collected.erase(c);
        }
    }
};

}  // namespace

BruteForceResult brute_force_gi_ex(
    const InspectionInstance& inst, const MetricClosure& mc, const OracleLimits& limits,
    std::optional<std::chrono::steady_clock::time_point> deadline) {
    if (inst.vertex_count > limits.max_vertices)
        throw Error(ErrorCode::LimitExceeded, "oracle vertex limit exceeded");
    const auto placed = inst.placed_colors();
    if (static_cast<int>(placed.size()) > limits.max_colors)
        throw Error(ErrorCode::LimitExceeded, "oracle color limit exceeded");
    if (inst.quota > static_cast<int>(placed.size()))
        throw Error(ErrorCode::InfeasibleQuota, "quota exceeds collectible colors");

    GiSearch search{inst, mc, limits, deadline};
    for (int v = 0; v < inst.vertex_count; ++v) {
        if (v == inst.start || inst.colors[v].empty()) continue;
        search.colored.push_back(v);
        search.color_ids.push_back(inst.colors[v]);
    }
    search.run();

    BruteForceResult out;
    out.optimal = !search.interrupted;
    if (search.best_seq.empty())
        throw Error(ErrorCode::InfeasibleQuota, "no feasible walk found");
    out.walk = expand_closure_walk(inst, search.best_seq, mc);
    return out;
}

Walk brute_force_gi(const InspectionInstance& inst, const MetricClosure& mc,
                    const OracleLimits& limits) {
    return brute_force_gi_ex(inst, mc, limits, std::nullopt).walk;
}

namespace {

struct MsesEdge {
    int u, v;
    double weight;
    int mult;  // after multiplicity-at-least-4 reduction: 1, 2 or 3
};

struct ComponentUnion {
    std::vector<int> parent;
    explicit ComponentUnion(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
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

WalkMultigraph brute_force_mses(const WalkMultigraph& g, const OracleLimits& limits) {
    // Normalize multiplicities to 1..3; removing doubled copies above that is
    // always safe for this problem.
    std::vector<MsesEdge> edges;
    std::vector<int> support;
    {
        std::vector<char> on(g.vertex_count, 0);
        for (const auto& [key, use] : g.edges) {
            if (use.mult <= 0) continue;
            int mult = use.mult;
            if (mult > 3) mult = (mult % 2 == 0) ? 2 : 3;
            edges.push_back({key.first, key.second, use.weight, mult});
            on[key.first] = 1;
            on[key.second] = 1;
        }
        for (int v = 0; v < g.vertex_count; ++v)
            if (on[v]) support.push_back(v);
    }
    if (edges.empty()) {
        WalkMultigraph empty;
        empty.vertex_count = g.vertex_count;
        return empty;
    }
    const int m = static_cast<int>(edges.size());
    if (m > 62) throw Error(ErrorCode::LimitExceeded, "mses oracle edge limit exceeded");

    // Cycle space basis of the support graph: non-tree edges + fundamental cycles.
    std::vector<int> comp_index(g.vertex_count, -1);
    for (size_t i = 0; i < support.size(); ++i) comp_index[support[i]] = static_cast<int>(i);
    ComponentUnion uf(static_cast<int>(support.size()));
    std::vector<int> tree_edges, chord_edges;
    for (int e = 0; e < m; ++e) {
        if (uf.unite(comp_index[edges[e].u], comp_index[edges[e].v]))
            tree_edges.push_back(e);
        else
            chord_edges.push_back(e);
    }
    for (size_t i = 1; i < support.size(); ++i)
        if (uf.find(static_cast<int>(i)) != uf.find(0))
            throw Error(ErrorCode::NotEulerian, "mses oracle needs a connected multigraph");

    // Fundamental cycle of each chord as an edge bitmask.
    std::vector<std::vector<std::pair<int, int>>> tree_adj(support.size());  // (neighbor, edge)
    for (int e : tree_edges) {
        tree_adj[comp_index[edges[e].u]].emplace_back(comp_index[edges[e].v], e);
        tree_adj[comp_index[edges[e].v]].emplace_back(comp_index[edges[e].u], e);
    }
    std::vector<int> par(support.size(), -1), par_edge(support.size(), -1), depth(support.size(), 0);
    {
        std::vector<int> stack{0};
        std::vector<char> seen(support.size(), 0);
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [u, e] : tree_adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    par[u] = v;
                    par_edge[u] = e;
                    depth[u] = depth[v] + 1;
                    stack.push_back(u);
                }
        }
    }
    std::vector<uint64_t> basis;
    for (int e : chord_edges) {
        uint64_t mask = uint64_t{1} << e;
        int a = comp_index[edges[e].u];
        int b = comp_index[edges[e].v];
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            mask ^= uint64_t{1} << par_edge[a];
            a = par[a];
        }
        basis.push_back(mask);
    }
    if (basis.size() > 26 || (long long)(uint64_t{1} << basis.size()) > limits.max_nodes)
        throw Error(ErrorCode::LimitExceeded, "mses oracle cycle space too large");

    // Doubled edges usable to patch connectivity, cheapest first.
    std::vector<int> doubled;
    for (int e = 0; e < m; ++e)
        if (edges[e].mult >= 2) doubled.push_back(e);
    std::sort(doubled.begin(), doubled.end(), [&](int a, int b) {
        if (edges[a].weight != edges[b].weight) return edges[a].weight < edges[b].weight;
        return a < b;
    });

    double best_weight = std::numeric_limits<double>::infinity();
    uint64_t best_odd = 0;
    uint64_t best_doubles = 0;

    const uint64_t combos = uint64_t{1} << basis.size();
    for (uint64_t pick = 0; pick < combos; ++pick) {
        uint64_t odd = 0;
        for (size_t b = 0; b < basis.size(); ++b)
            if (pick & (uint64_t{1} << b)) odd ^= basis[b];
        double weight = 0.0;
        for (int e = 0; e < m; ++e)
            if (odd & (uint64_t{1} << e)) weight += edges[e].weight;
        if (weight >= best_weight) continue;

        // Connect the odd-part components (every support vertex must join)
        // with doubled edges, cheapest first.
        ComponentUnion cc(static_cast<int>(support.size()));
        int comps = static_cast<int>(support.size());
        for (int e = 0; e < m; ++e)
            if (odd & (uint64_t{1} << e))
                if (cc.unite(comp_index[edges[e].u], comp_index[edges[e].v])) --comps;
        uint64_t doubles = 0;
        for (int e : doubled) {
            if (comps == 1) break;
            if (odd & (uint64_t{1} << e)) continue;
            if (cc.unite(comp_index[edges[e].u], comp_index[edges[e].v])) {
                --comps;
                doubles |= uint64_t{1} << e;
                weight += 2.0 * edges[e].weight;
            }
        }
        if (comps != 1 || weight >= best_weight) continue;
        best_weight = weight;
        best_odd = odd;
        best_doubles = doubles;
    }

    if (!std::isfinite(best_weight))
        throw Error(ErrorCode::NotEulerian, "no spanning Eulerian submultigraph exists");

    WalkMultigraph out;
    out.vertex_count = g.vertex_count;
    for (int e = 0; e < m; ++e) {
        int mult = 0;
        if (best_odd & (uint64_t{1} << e)) mult += 1;
        if (best_doubles & (uint64_t{1} << e)) mult += 2;
        if (mult > 0) out.add_edge(edges[e].u, edges[e].v, edges[e].weight, mult);
    }
    return out;
}

bool hamiltonian_check(int vertex_count, const std::vector<std::pair<int, int>>& edges,
                       const OracleLimits& limits) {
    if (vertex_count > 10) throw Error(ErrorCode::LimitExceeded, "hamiltonicity limit is 10 vertices");
    if (vertex_count <= 0) return false;
    if (vertex_count == 1) return true;
    std::vector<std::vector<char>> adj(vertex_count, std::vector<char>(vertex_count, 0));
    for (auto [u, v] : edges) {
        adj[u][v] = 1;
        adj[v][u] = 1;
    }
    long long nodes = 0;
    std::vector<char> used(vertex_count, 0);
    used[0] = 1;
    // DFS over paths anchored at vertex 0.
    auto dfs = [&](auto&& self, int at, int remaining) -> bool {
        if (++nodes > limits.max_nodes)
            throw Error(ErrorCode::LimitExceeded, "hamiltonicity enumeration exceeded node limit");
        if (remaining == 0) return adj[at][0];
        for (int v = 1; v < vertex_count; ++v) {
            if (used[v] || !adj[at][v]) continue;
            used[v] = 1;
            if (self(self, v, remaining - 1)) return true;
            used[v] = 0;
        }
        return false;
    };
    return dfs(dfs, 0, vertex_count - 1);
}

}  // namespace gi
