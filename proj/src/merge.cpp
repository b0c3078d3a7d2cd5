#include "gi/merge.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "gi/ilp_model.hpp"
#include "gi/solver_ilp.hpp"

namespace gi {

MergeInput MergeInput::build(const InspectionInstance& inst, std::vector<Walk> walks) {
    if (walks.empty()) throw Error(ErrorCode::InvalidId, "merge needs at least one walk");
    MergeInput in;
    in.inst = &inst;
    in.unioned.vertex_count = inst.vertex_count;
    for (const Walk& walk : walks) {
        std::string why;
        if (!validate_walk(inst, walk, &why)) throw Error(ErrorCode::InvalidId, "merge input: " + why);
        const WalkMultigraph g = walk_to_multigraph(inst, walk);
        for (const auto& [key, use] : g.edges)
            in.unioned.add_edge(key.first, key.second, use.weight, use.mult);
    }
    in.walks = std::move(walks);
    return in;
}

Walk concat_merge(const MergeInput& in) {
    std::vector<int> seq{in.inst->start};
    for (const Walk& walk : in.walks)
        seq.insert(seq.end(), walk.vertices.begin() + 1, walk.vertices.end());
    return make_walk(*in.inst, std::move(seq));
}

WalkMultigraph apply_rule1(WalkMultigraph g) {
    for (auto& [key, use] : g.edges)
        if (use.mult >= 4) use.mult = (use.mult % 2 == 0) ? 2 : 3;
    return g;
}

namespace {

bool removing_pair_disconnects(const WalkMultigraph& g, const std::pair<int, int>& e1,
                               const std::pair<int, int>& e2) {
    std::vector<std::vector<int>> adj(g.vertex_count);
    for (const auto& [key, use] : g.edges) {
        if (use.mult == 0 || key == e1 || key == e2) continue;
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    const auto support = g.support_vertices();
    if (support.empty()) return false;
    std::vector<char> seen(g.vertex_count, 0);
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
        if (!seen[v]) return true;
    return false;
}

}  // namespace

std::set<std::pair<int, int>> find_undeletable(const WalkMultigraph& g, bool full_two_cuts) {
    std::set<std::pair<int, int>> marked;
    const auto deg = g.degrees();

    // Both edge slots at a multigraph-degree-2 vertex form a 2-cut.
    for (const auto& [key, use] : g.edges) {
        if (use.mult == 0) continue;
        if (deg[key.first] == 2 || deg[key.second] == 2) marked.insert(key);
    }

    // Doubled edges that bridge the underlying simple graph.
    {
        std::vector<std::pair<int, int>> bridges;
        std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count);  // (neighbor, edge idx)
        std::vector<std::pair<int, int>> simple;
        for (const auto& [key, use] : g.edges)
            if (use.mult > 0) simple.push_back(key);
        for (size_t i = 0; i < simple.size(); ++i) {
            adj[simple[i].first].emplace_back(simple[i].second, static_cast<int>(i));
            adj[simple[i].second].emplace_back(simple[i].first, static_cast<int>(i));
        }
        std::vector<int> entry(g.vertex_count, -1), low(g.vertex_count, 0);
        int timer = 0;
        // Iterative lowlink bridge finding.
        struct Frame {
            int v, parent_edge;
            size_t next = 0;
        };
        for (int root = 0; root < g.vertex_count; ++root) {
            if (entry[root] >= 0 || adj[root].empty()) continue;
            std::vector<Frame> stack{{root, -1}};
            entry[root] = low[root] = timer++;
            while (!stack.empty()) {
                Frame& frame = stack.back();
                if (frame.next < adj[frame.v].size()) {
                    auto [u, edge] = adj[frame.v][frame.next++];
                    if (edge == frame.parent_edge) continue;
                    if (entry[u] >= 0) {
                        low[frame.v] = std::min(low[frame.v], entry[u]);
                    } else {
                        entry[u] = low[u] = timer++;
                        stack.push_back({u, edge});
                    }
                } else {
                    const Frame done = frame;
                    stack.pop_back();
                    if (!stack.empty()) {
                        Frame& up = stack.back();
                        low[up.v] = std::min(low[up.v], low[done.v]);
                        if (low[done.v] > entry[up.v]) bridges.push_back(simple[done.parent_edge]);
                    }
                }
            }
        }
        for (const auto& key : bridges)
            if (g.multiplicity(key.first, key.second) >= 2) marked.insert(key);
    }

    if (full_two_cuts) {
        if (g.vertex_count > 64)
            throw Error(ErrorCode::LimitExceeded, "full 2-cut search is limited to 64 vertices");
        std::vector<std::pair<int, int>> simple;
        for (const auto& [key, use] : g.edges)
            if (use.mult > 0) simple.push_back(key);
        for (size_t i = 0; i < simple.size(); ++i)
            for (size_t j = i + 1; j < simple.size(); ++j)
                if (removing_pair_disconnects(g, simple[i], simple[j])) {
                    marked.insert(simple[i]);
                    marked.insert(simple[j]);
                }
    }
    return marked;
}

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
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

Walk greedy_merge(const MergeInput& in) {
    const int s = in.inst->start;
    WalkMultigraph g = apply_rule1(in.unioned);
    if (g.edges.empty()) return make_walk(*in.inst, {s});
    const auto undeletable = find_undeletable(g);

    // Spanning structure: undeletable edges first, then Kruskal to connect.
    std::set<std::pair<int, int>> spanning = undeletable;
    {
        DisjointSet ds(g.vertex_count);
        for (const auto& key : spanning) ds.unite(key.first, key.second);
        std::vector<std::pair<int, int>> rest;
        for (const auto& [key, use] : g.edges)
            if (use.mult > 0 && !spanning.count(key)) rest.push_back(key);
        std::sort(rest.begin(), rest.end(), [&](const auto& a, const auto& b) {
            const double wa = g.edges.at(a).weight;
            const double wb = g.edges.at(b).weight;
            if (wa != wb) return wa < wb;
            return a < b;
        });
        for (const auto& key : rest)
            if (ds.unite(key.first, key.second)) spanning.insert(key);
    }

    // Remaining copies, heaviest first, smaller endpoints break ties.
    std::vector<std::pair<int, int>> copies;
    for (const auto& [key, use] : g.edges) {
        const int extra = use.mult - (spanning.count(key) ? 1 : 0);
        for (int i = 0; i < extra; ++i) copies.push_back(key);
    }
    std::sort(copies.begin(), copies.end(), [&](const auto& a, const auto& b) {
        const double wa = g.edges.at(a).weight;
        const double wb = g.edges.at(b).weight;
        if (wa != wb) return wa > wb;
        return a < b;
    });

    // Grow a forest; each copy that would close a cycle gets packed together
    // with the tree path it closes, and the whole cycle is discarded.
    std::map<std::pair<int, int>, int> removed;
    std::map<std::pair<int, int>, int> forest_mult;
    DisjointSet ds(g.vertex_count);
    auto forest_neighbors = [&](int v) {
        std::vector<int> out;
        for (const auto& [key, mult] : forest_mult) {
            if (mult <= 0) continue;
            if (key.first == v) out.push_back(key.second);
            if (key.second == v) out.push_back(key.first);
        }
        return out;
    };
    for (const auto& key : copies) {
        if (ds.find(key.first) != ds.find(key.second)) {
            ds.unite(key.first, key.second);
            ++forest_mult[key];
            continue;
        }
        // Path between the endpoints inside the forest (BFS).
        std::vector<int> from(g.vertex_count, -1);
        std::vector<int> queue{key.first};
        from[key.first] = key.first;
        for (size_t qi = 0; qi < queue.size() && from[key.second] < 0; ++qi) {
            const int v = queue[qi];
            for (int u : forest_neighbors(v)) {
                if (from[u] >= 0) continue;
                from[u] = v;
                queue.push_back(u);
            }
        }
        ++removed[key];  // the closing copy
        for (int v = key.second; v != key.first; v = from[v]) {
            --forest_mult[std::minmax(v, from[v])];
            ++removed[std::minmax(v, from[v])];
        }
        // Forest membership changed; rebuild the component structure.
        ds = DisjointSet(g.vertex_count);
        for (const auto& [fkey, mult] : forest_mult)
            if (mult > 0) ds.unite(fkey.first, fkey.second);
    }

    WalkMultigraph result;
    result.vertex_count = g.vertex_count;
    for (const auto& [key, use] : g.edges) {
        const int mult = use.mult - (removed.count(key) ? removed.at(key) : 0);
        if (mult > 0) result.add_edge(key.first, key.second, use.weight, mult);
    }
    return make_walk(*in.inst, euler_tour(result, s));
}

Walk exact_merge(const MergeInput& in, SolverBackend& backend, double time_limit_seconds) {
    const int s = in.inst->start;
    WalkMultigraph g = apply_rule1(in.unioned);
    if (g.edges.empty()) return make_walk(*in.inst, {s});

    // Inspection instance on the union's underlying simple graph: the start
    // plus a unique color per other vertex, all of which must be collected.
    std::vector<int> verts = g.support_vertices();
    if (std::find(verts.begin(), verts.end(), s) == verts.end())
        throw Error(ErrorCode::StartOffSupport, "merge union avoids the start vertex");
    std::vector<int> local(in.inst->vertex_count, -1);
    for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);

    InspectionInstance derived;
    derived.vertex_count = static_cast<int>(verts.size());
    derived.colors.resize(verts.size());
    derived.start = local[s];
    derived.color_count = static_cast<int>(verts.size()) - 1;
    derived.quota = derived.color_count;
    int next_color = 0;
    for (size_t i = 0; i < verts.size(); ++i)
        if (static_cast<int>(i) != derived.start) derived.colors[i] = {next_color++};
    WalkMultigraph derived_union;
    derived_union.vertex_count = derived.vertex_count;
    for (const auto& [key, use] : g.edges) {
        derived.edges.push_back({local[key.first], local[key.second], use.weight});
        derived_union.add_edge(local[key.first], local[key.second], use.weight, use.mult);
    }

    if (derived.quota == 0) {
        // Single-vertex union: nothing to span beyond the start.
        return make_walk(*in.inst, {s});
    }

    IlpModel model = build_model(derived);
    for (const auto& [key, use] : derived_union.edges)
        if (use.mult == 1) add_capacity_constraint(model, key.first, key.second);
    auto source = std::make_shared<ModelSource>();
    source->instance = derived;
    source->merge_graph = derived_union;
    model.source = std::move(source);

    const IlpSolution sol = solve_ilp(model, backend, time_limit_seconds);
    if (sol.status != SolveStatus::Optimal && sol.status != SolveStatus::Feasible)
        throw Error(ErrorCode::Timeout, std::string("exact merge backend ended ") +
                                            solve_status_name(sol.status));
    const Walk derived_walk = recover_walk(derived, model, sol);
    std::vector<int> seq;
    for (int v : derived_walk.vertices) seq.push_back(verts[v]);
    return make_walk(*in.inst, std::move(seq));
}

MergeStrategy merge_strategy_from(const std::string& name) {
    if (name == "concat") return MergeStrategy::Concat;
    if (name == "greedy") return MergeStrategy::Greedy;
    if (name == "exact") return MergeStrategy::Exact;
    throw Error(ErrorCode::InvalidConfig, "unknown merge strategy '" + name + "'");
}

}  // namespace gi
