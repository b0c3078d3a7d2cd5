#include "gi/multigraph.hpp"

#include <algorithm>
#include <string>

namespace gi {

void WalkMultigraph::add_edge(int u, int v, double weight, int mult) {
    if (u == v) throw Error(ErrorCode::InvalidId, "multigraph edges must be loopless");
    auto& use = edges[std::minmax(u, v)];
    use.mult += mult;
    use.weight = weight;
}

int WalkMultigraph::multiplicity(int u, int v) const {
    auto it = edges.find(std::minmax(u, v));
    return it == edges.end() ? 0 : it->second.mult;
}

double WalkMultigraph::total_weight() const {
    double sum = 0.0;
    for (const auto& [key, use] : edges) sum += use.mult * use.weight;
    return sum;
}

int WalkMultigraph::total_multiplicity() const {
    int sum = 0;
    for (const auto& [key, use] : edges) sum += use.mult;
    return sum;
}

std::vector<int> WalkMultigraph::degrees() const {
    std::vector<int> deg(vertex_count, 0);
    for (const auto& [key, use] : edges) {
        deg[key.first] += use.mult;
        deg[key.second] += use.mult;
    }
    return deg;
}

std::vector<int> WalkMultigraph::support_vertices() const {
    std::vector<int> out;
    const auto deg = degrees();
    for (int v = 0; v < vertex_count; ++v)
        if (deg[v] > 0) out.push_back(v);
    return out;
}

bool WalkMultigraph::support_connected_covering(const std::vector<int>& cover) const {
    const auto support = support_vertices();
    if (support.empty()) return cover.empty();
    std::vector<std::vector<int>> adj(vertex_count);
    for (const auto& [key, use] : edges) {
        if (use.mult == 0) continue;
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    std::vector<char> seen(vertex_count, 0);
    std::vector<int> stack{support.front()};
    seen[support.front()] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    for (int v : support)
        if (!seen[v]) return false;
    for (int v : cover)
        if (!seen[v]) return false;
    return true;
}

bool WalkMultigraph::eulerian() const {
    for (int d : degrees())
        if (d % 2 != 0) return false;
    return support_connected_covering({});
}

bool is_eulerian(const WalkMultigraph& g) { return g.eulerian(); }

std::vector<int> euler_tour(const WalkMultigraph& g, int start) {
    const auto deg = g.degrees();
    if (g.edges.empty() || g.total_multiplicity() == 0) {
        return {start};
    }
    if (start < 0 || start >= g.vertex_count || deg[start] == 0)
        throw Error(ErrorCode::StartOffSupport, "start vertex has no incident edges");
    for (int v = 0; v < g.vertex_count; ++v)
        if (deg[v] % 2 != 0)
            throw Error(ErrorCode::NotEulerian, "vertex " + std::to_string(v) + " has odd degree");
    if (!g.support_connected_covering({}))
        throw Error(ErrorCode::NotEulerian, "support is disconnected");

    // Remaining multiplicity per neighbor, sorted so the tour is deterministic.
    std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count);  // (neighbor, remaining)
    for (const auto& [key, use] : g.edges) {
        if (use.mult == 0) continue;
        adj[key.first].emplace_back(key.second, use.mult);
        adj[key.second].emplace_back(key.first, use.mult);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    std::vector<size_t> cursor(g.vertex_count, 0);

    auto take_edge = [&](int v) -> int {
        auto& nbrs = adj[v];
        size_t& i = cursor[v];
        while (i < nbrs.size() && nbrs[i].second == 0) ++i;
        if (i >= nbrs.size()) return -1;
        int u = nbrs[i].first;
        --nbrs[i].second;
        // Mirror entry (one per neighbor): decrement the other side too.
        auto& back = adj[u];
        auto it = std::lower_bound(back.begin(), back.end(), std::make_pair(v, 0));
        --it->second;
        return u;
    };

    std::vector<int> stack{start};
    std::vector<int> tour;
    while (!stack.empty()) {
        int v = stack.back();
        int u = take_edge(v);
        if (u < 0) {
            tour.push_back(v);
            stack.pop_back();
        } else {
            stack.push_back(u);
        }
    }
    std::reverse(tour.begin(), tour.end());
    return tour;
}

WalkMultigraph walk_to_multigraph(const InspectionInstance& inst, const Walk& walk) {
    WalkMultigraph g;
    g.vertex_count = inst.vertex_count;
    std::map<std::pair<int, int>, double> weights;
    for (const Edge& e : inst.edges) weights[std::minmax(e.u, e.v)] = e.weight;
    for (size_t i = 1; i < walk.vertices.size(); ++i) {
        const int u = walk.vertices[i - 1];
        const int v = walk.vertices[i];
        auto it = weights.find(std::minmax(u, v));
        if (it == weights.end()) throw Error(ErrorCode::InvalidId, "walk uses a missing edge");
        g.add_edge(u, v, it->second, 1);
    }
    return g;
}

}  // namespace gi
