#include "gi/bounds.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "gi/multigraph.hpp"
#include "gi/solver_ilp.hpp"

namespace gi {

namespace {

// Kou-Markowsky-Berman 2-approximation: closure MST on the terminals,
// expanded into real paths, re-spanned and pruned back to terminal leaves.
std::vector<Edge> steiner_tree_2approx(const InspectionInstance& inst, const MetricClosure& mc,
                                       const std::vector<int>& terminals) {
    if (terminals.size() <= 1) return {};
    InspectionInstance closure_graph;
    closure_graph.vertex_count = static_cast<int>(terminals.size());
    closure_graph.colors.resize(terminals.size());
    for (size_t i = 0; i < terminals.size(); ++i)
        for (size_t j = i + 1; j < terminals.size(); ++j)
            closure_graph.edges.push_back(
                {static_cast<int>(i), static_cast<int>(j), mc.dist(terminals[i], terminals[j])});
    const auto closure_mst = minimum_spanning_tree(closure_graph);

    // Expand each closure edge into a real path; keep the union as a subgraph.
    std::set<std::pair<int, int>> used;
    for (const Edge& e : closure_mst) {
        const auto path = mc.path(terminals[e.u], terminals[e.v]);
        for (size_t i = 1; i < path.size(); ++i) used.insert(std::minmax(path[i - 1], path[i]));
    }
    std::map<std::pair<int, int>, double> weight_of;
    for (const Edge& e : inst.edges) weight_of[std::minmax(e.u, e.v)] = e.weight;

    // Re-index the subgraph and take its MST.
    std::vector<int> sub_vertices;
    {
        std::set<int> verts;
        for (const auto& [a, b] : used) {
            verts.insert(a);
            verts.insert(b);
        }
        sub_vertices.assign(verts.begin(), verts.end());
    }
    std::vector<int> local(inst.vertex_count, -1);
    for (size_t i = 0; i < sub_vertices.size(); ++i) local[sub_vertices[i]] = static_cast<int>(i);
    InspectionInstance subgraph;
    subgraph.vertex_count = static_cast<int>(sub_vertices.size());
    subgraph.colors.resize(sub_vertices.size());
    for (const auto& [a, b] : used)
        subgraph.edges.push_back({local[a], local[b], weight_of.at({a, b})});
    auto tree = minimum_spanning_tree(subgraph);

    // Prune non-terminal leaves until every leaf is a terminal.
    std::vector<char> is_terminal(sub_vertices.size(), 0);
    for (int t : terminals)
        if (local[t] >= 0) is_terminal[local[t]] = 1;
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> degree(sub_vertices.size(), 0);
        for (const Edge& e : tree) {
            ++degree[e.u];
            ++degree[e.v];
        }
        std::vector<Edge> kept;
        for (const Edge& e : tree) {
            const bool leaf_u = degree[e.u] == 1 && !is_terminal[e.u];
            const bool leaf_v = degree[e.v] == 1 && !is_terminal[e.v];
            if (leaf_u || leaf_v) changed = true;
            else kept.push_back(e);
        }
        tree = std::move(kept);
    }

    std::vector<Edge> out;
    for (const Edge& e : tree) out.push_back({sub_vertices[e.u], sub_vertices[e.v], e.weight});
    return out;
}

}  // namespace

Walk algorithm_st(const InspectionInstance& inst, const MetricClosure& mc, int quota) {
    if (!inst.colors[inst.start].empty())
        throw Error(ErrorCode::InvalidId, "algorithm_st requires a normalized instance");
    if (quota <= 0) throw Error(ErrorCode::InfeasibleQuota, "algorithm_st needs a positive quota");

    // Terminals: repeatedly take the vertex with a new color closest to the
    // start (ties to the smaller id).
    std::vector<int> terminals{inst.start};
    std::set<int> covered;
    std::vector<char> chosen(inst.vertex_count, 0);
    chosen[inst.start] = 1;
    while (static_cast<int>(covered.size()) < quota) {
        int pick = -1;
        double pick_dist = std::numeric_limits<double>::infinity();
        for (int v = 0; v < inst.vertex_count; ++v) {
            if (chosen[v]) continue;
            bool fresh = false;
            for (int c : inst.colors[v])
                if (!covered.count(c)) {
                    fresh = true;
                    break;
                }
            if (!fresh) continue;
            const double d = mc.dist(inst.start, v);
            if (d < pick_dist) {
                pick_dist = d;
                pick = v;
            }
        }
        if (pick < 0)
            throw Error(ErrorCode::InfeasibleQuota,
                        "only " + std::to_string(covered.size()) + " colors are collectible");
        chosen[pick] = 1;
        terminals.push_back(pick);
        covered.insert(inst.colors[pick].begin(), inst.colors[pick].end());
    }

    const auto tree = steiner_tree_2approx(inst, mc, terminals);
    if (tree.empty()) return make_walk(inst, {inst.start});
    WalkMultigraph doubled;
    doubled.vertex_count = inst.vertex_count;
    for (const Edge& e : tree) doubled.add_edge(e.u, e.v, e.weight, 2);
    return make_walk(inst, euler_tour(doubled, inst.start));
}

Walk algorithm_st(const InspectionInstance& inst, const MetricClosure& mc) {
    return algorithm_st(inst, mc, inst.quota);
}

std::vector<BoundReport> bound_sweep(const InspectionInstance& inst, const MetricClosure& mc,
                                     const std::vector<int>& quotas, SolverBackend& backend) {
    std::vector<BoundReport> reports(quotas.size());
    std::vector<IlpModel> models;
    std::vector<size_t> model_slot;
    for (size_t i = 0; i < quotas.size(); ++i) {
        reports[i].quota = quotas[i];
        if (quotas[i] == 0) {
            reports[i].witness = make_walk(inst, {inst.start});
            continue;
        }
        reports[i].witness = algorithm_st(inst, mc, quotas[i]);
        reports[i].upper = reports[i].witness.weight;
        InspectionInstance at_quota = inst;
        at_quota.quota = quotas[i];
        models.push_back(build_model(at_quota));
        model_slot.push_back(i);
    }
    if (!models.empty()) {
        if (!backend.capabilities().lp_relaxation)
            throw Error(ErrorCode::BackendUnavailable,
                        backend.identity() + " does not support LP relaxations");
        std::vector<const IlpModel*> refs;
        for (const auto& m : models) refs.push_back(&m);
        SolveOptions opts;
        opts.relax = true;
        const auto solutions = backend.solve_all(refs, opts);
        for (size_t j = 0; j < solutions.size(); ++j) {
            if (solutions[j].status != SolveStatus::Optimal)
                throw Error(ErrorCode::ModelRejected, "LP relaxation did not solve to optimality");
            reports[model_slot[j]].lower = solutions[j].objective;
        }
    }
    // A witness for a larger quota certifies every smaller one.
    std::vector<size_t> by_quota(quotas.size());
    for (size_t i = 0; i < quotas.size(); ++i) by_quota[i] = i;
    std::sort(by_quota.begin(), by_quota.end(),
              [&](size_t a, size_t b) { return quotas[a] > quotas[b]; });
    double best_upper = std::numeric_limits<double>::infinity();
    const Walk* best_witness = nullptr;
    for (size_t idx : by_quota) {
        if (reports[idx].quota == 0) continue;
        if (reports[idx].upper < best_upper) {
            best_upper = reports[idx].upper;
            best_witness = &reports[idx].witness;
        } else if (best_witness) {
            reports[idx].upper = best_upper;
            reports[idx].witness = *best_witness;
        }
    }
    return reports;
}

}  // namespace gi
