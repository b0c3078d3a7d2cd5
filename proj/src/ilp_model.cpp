#include "gi/ilp_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace gi {

const char* solve_status_name(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Timeout: return "timeout";
    }
    return "unknown";
}

int IlpModel::variable_index(const std::string& name) const {
    for (size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

std::string num(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string arc_name(int u, int v) { return "x_" + std::to_string(u) + "_" + std::to_string(v); }

std::string charge_name(int u, int v, int endpoint) {
    auto [a, b] = std::minmax(u, v);
    return "y_" + std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(endpoint);
}

}  // namespace

IlpModel build_model(const InspectionInstance& inst) {
    inst.validate();
    if (!inst.colors[inst.start].empty())
        throw Error(ErrorCode::InvalidId, "build_model requires a normalized instance");
    const auto placed = inst.placed_colors();
    if (inst.quota <= 0)
        throw Error(ErrorCode::DegenerateInstance, "model requires a positive quota");
    bool colored_non_start = false;
    for (int v = 0; v < inst.vertex_count && !colored_non_start; ++v)
        if (v != inst.start && !inst.colors[v].empty()) colored_non_start = true;
    if (!colored_non_start)
        throw Error(ErrorCode::DegenerateInstance, "no vertex besides the start carries a color");

    IlpModel model;
    auto src = std::make_shared<ModelSource>();
    src->instance = inst;
    model.source = std::move(src);

    std::unordered_map<long long, int> var_of_arc;  // u * V + v -> variable index
    auto arc_key = [&](int u, int v) { return static_cast<long long>(u) * inst.vertex_count + v; };

    for (const Edge& e : inst.edges) {
        for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
            var_of_arc[arc_key(u, v)] = static_cast<int>(model.variables.size());
            model.arc_vars.push_back(static_cast<int>(model.variables.size()));
            model.arc_vars_uv.emplace_back(u, v);
            model.variables.push_back({arc_name(u, v), VarKind::Binary, e.weight});
        }
    }
    std::map<std::pair<std::pair<int, int>, int>, int> var_of_charge;
    for (const Edge& e : inst.edges) {
        if (e.u == inst.start || e.v == inst.start) continue;
        for (int endpoint : {std::min(e.u, e.v), std::max(e.u, e.v)}) {
            var_of_charge[{std::minmax(e.u, e.v), endpoint}] = static_cast<int>(model.variables.size());
            model.variables.push_back({charge_name(e.u, e.v, endpoint), VarKind::ContinuousNonneg, 0.0});
        }
    }
    const bool collect_all = inst.quota == static_cast<int>(placed.size());
    std::unordered_map<int, int> var_of_color;
    if (!collect_all) {
        for (int c : placed) {
            var_of_color[c] = static_cast<int>(model.variables.size());
            model.z_vars.push_back(static_cast<int>(model.variables.size()));
            model.color_of_z.push_back(c);
            model.variables.push_back({"z_" + std::to_string(c), VarKind::Binary, 0.0});
        }
    }

    const auto adj = inst.adjacency();

    // Flow preservation at every vertex.
    for (int v = 0; v < inst.vertex_count; ++v) {
        IlpConstraint row;
        row.name = "flow_" + std::to_string(v);
        row.sense = Sense::Equal;
        row.rhs = 0.0;
        for (auto [u, w] : adj[v]) {
            (void)w;
            row.terms.emplace_back(var_of_arc.at(arc_key(u, v)), 1.0);
            row.terms.emplace_back(var_of_arc.at(arc_key(v, u)), -1.0);
        }
        model.constraints.push_back(std::move(row));
    }
    // Outgoing flow at the source.
    {
        IlpConstraint row;
        row.name = "source";
        row.sense = Sense::GreaterEqual;
        row.rhs = 1.0;
        for (auto [u, w] : adj[inst.start]) {
            (void)w;
            row.terms.emplace_back(var_of_arc.at(arc_key(inst.start, u)), 1.0);
        }
        model.constraints.push_back(std::move(row));
    }
    // Each selected edge not touching the start emits two charges.
    for (const Edge& e : inst.edges) {
        if (e.u == inst.start || e.v == inst.start) continue;
        IlpConstraint row;
        auto [a, b] = std::minmax(e.u, e.v);
        row.name = "charge_" + std::to_string(a) + "_" + std::to_string(b);
        row.sense = Sense::Equal;
        row.rhs = 0.0;
        row.terms.emplace_back(var_of_charge.at({{a, b}, a}), 1.0);
        row.terms.emplace_back(var_of_charge.at({{a, b}, b}), 1.0);
        row.terms.emplace_back(var_of_arc.at(arc_key(e.u, e.v)), -2.0);
        row.terms.emplace_back(var_of_arc.at(arc_key(e.v, e.u)), -2.0);
        model.constraints.push_back(std::move(row));
    }
    // Consumption strictly below two charges per unit of incoming flow.
    const double consume = 2.0 - 2.0 / (2.0 * inst.vertex_count - 3.0);
    for (int v = 0; v < inst.vertex_count; ++v) {
        if (v == inst.start) continue;
        IlpConstraint row;
        row.name = "consume_" + std::to_string(v);
        row.sense = Sense::LessEqual;
        row.rhs = 0.0;
        for (auto [u, w] : adj[v]) {
            (void)w;
            if (u != inst.start) row.terms.emplace_back(var_of_charge.at({std::minmax(u, v), v}), 1.0);
            row.terms.emplace_back(var_of_arc.at(arc_key(u, v)), -consume);
        }
        model.constraints.push_back(std::move(row));
    }
    // Color collection rows.
    std::vector<std::vector<int>> holders(inst.color_count);
    for (int v = 0; v < inst.vertex_count; ++v)
        for (int c : inst.colors[v]) holders[c].push_back(v);
    if (collect_all) {
        for (int c : placed) {
            IlpConstraint row;
            row.name = "color_" + std::to_string(c);
            row.sense = Sense::GreaterEqual;
            row.rhs = 1.0;
            for (int v : holders[c])
                for (auto [u, w] : adj[v]) {
                    (void)w;
                    row.terms.emplace_back(var_of_arc.at(arc_key(u, v)), 1.0);
                }
            model.constraints.push_back(std::move(row));
        }
    } else {
        for (int c : placed) {
            IlpConstraint row;
            row.name = "collect_" + std::to_string(c);
            row.sense = Sense::LessEqual;
            row.rhs = 0.0;
            row.terms.emplace_back(var_of_color.at(c), 1.0);
            for (int v : holders[c])
                for (auto [u, w] : adj[v]) {
                    (void)w;
                    row.terms.emplace_back(var_of_arc.at(arc_key(u, v)), -1.0);
                }
            model.constraints.push_back(std::move(row));
        }
        IlpConstraint row;
        row.name = "quota";
        row.sense = Sense::GreaterEqual;
        row.rhs = inst.quota;
        for (int zi : model.z_vars) row.terms.emplace_back(zi, 1.0);
        model.constraints.push_back(std::move(row));
    }
    return model;
}

void add_capacity_constraint(IlpModel& model, int u, int v) {
    const int forward = model.variable_index(arc_name(u, v));
    const int backward = model.variable_index(arc_name(v, u));
    if (forward < 0 || backward < 0) throw Error(ErrorCode::InvalidId, "capacity edge not in model");
    IlpConstraint row;
    auto [a, b] = std::minmax(u, v);
    row.name = "cap_" + std::to_string(a) + "_" + std::to_string(b);
    row.sense = Sense::LessEqual;
    row.rhs = 1.0;
    row.terms.emplace_back(forward, 1.0);
    row.terms.emplace_back(backward, 1.0);
    model.constraints.push_back(std::move(row));
}

std::string export_lp(const IlpModel& model) {
    std::ostringstream out;
    out << "Minimize\n obj:";
    bool first = true;
    for (const auto& var : model.variables) {
        if (var.objective == 0.0) continue;
        if (first) {
            out << " " << num(var.objective) << " " << var.name;
            first = false;
        } else {
            out << (var.objective < 0 ? " - " + num(-var.objective) : " + " + num(var.objective)) << " "
                << var.name;
        }
    }
    if (first) out << " 0 " << model.variables.at(0).name;
    out << "\nSubject To\n";
    for (const auto& row : model.constraints) {
        out << " " << row.name << ":";
        bool lead = true;
        for (const auto& [vi, coef] : row.terms) {
            if (coef == 0.0) continue;
            if (lead) {
                out << " " << num(coef);
                lead = false;
            } else {
                out << (coef < 0 ? " - " + num(-coef) : " + " + num(coef));
            }
            out << " " << model.variables[vi].name;
        }
        const char* sense = row.sense == Sense::LessEqual ? "<=" : row.sense == Sense::Equal ? "=" : ">=";
        out << " " << sense << " " << num(row.rhs) << "\n";
    }
    out << "Bounds\n";
    for (const auto& var : model.variables)
        if (var.kind == VarKind::ContinuousNonneg) out << " " << var.name << " >= 0\n";
    out << "Binaries\n";
    bool any = false;
    for (const auto& var : model.variables)
        if (var.kind == VarKind::Binary) {
            out << " " << var.name;
            any = true;
        }
    if (any) out << "\n";
    out << "End\n";
    return out.str();
}

IlpSolution import_solution(const std::string& text, const IlpModel& model) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& why) -> Error {
        return Error(ErrorCode::ParseError, "solution line " + std::to_string(line_no) + ": " + why);
    };
    IlpSolution sol;

    if (!std::getline(in, line)) throw fail("missing status line");
    ++line_no;
    {
        std::istringstream ls(line);
        std::string tag, status;
        ls >> tag >> status;
        if (tag != "status") throw fail("expected 'status'");
        if (status == "optimal") sol.status = SolveStatus::Optimal;
        else if (status == "feasible") sol.status = SolveStatus::Feasible;
        else if (status == "infeasible") sol.status = SolveStatus::Infeasible;
        else if (status == "timeout") sol.status = SolveStatus::Timeout;
        else throw fail("unknown status '" + status + "'");
    }
    if (!std::getline(in, line)) throw fail("missing objective line");
    ++line_no;
    {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag >> sol.objective;
        if (tag != "objective" || ls.fail()) throw fail("expected 'objective <real>'");
    }
    std::unordered_map<std::string, int> index;
    for (size_t i = 0; i < model.variables.size(); ++i) index[model.variables[i].name] = static_cast<int>(i);
    sol.values.assign(model.variables.size(), 0.0);
    bool any_value = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string name;
        double value;
        ls >> name >> value;
        if (ls.fail()) throw fail("expected 'name value'");
        auto it = index.find(name);
        if (it == index.end()) throw fail("unknown variable '" + name + "'");
        sol.values[it->second] = value;
        any_value = true;
    }
    if (!any_value && (sol.status == SolveStatus::Infeasible || sol.status == SolveStatus::Timeout))
        sol.values.clear();
    return sol;
}

bool assignment_feasible(const IlpModel& model, const std::vector<double>& values,
                         std::string* reason, double tolerance) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    if (values.size() != model.variables.size()) return fail("assignment size mismatch");
    for (size_t i = 0; i < values.size(); ++i) {
        const auto& var = model.variables[i];
        if (var.kind == VarKind::Binary) {
            if (std::abs(values[i] - std::round(values[i])) > tolerance || values[i] < -tolerance ||
                values[i] > 1.0 + tolerance)
                return fail("variable " + var.name + " is not binary: " + std::to_string(values[i]));
        } else if (values[i] < -tolerance) {
            return fail("variable " + var.name + " is negative");
        }
    }
    for (const auto& row : model.constraints) {
        double lhs = 0.0;
        for (const auto& [vi, coef] : row.terms) lhs += coef * values[vi];
        const bool ok = row.sense == Sense::LessEqual  ? lhs <= row.rhs + tolerance
                        : row.sense == Sense::Equal    ? std::abs(lhs - row.rhs) <= tolerance
                                                       : lhs >= row.rhs - tolerance;
        if (!ok)
            return fail("constraint " + row.name + " violated: lhs=" + std::to_string(lhs) +
                        " rhs=" + std::to_string(row.rhs));
    }
    return true;
}

Walk minimize_walk_edges(const InspectionInstance& inst, const Walk& walk) {
    if (walk.trivial()) return walk;
    WalkMultigraph g = walk_to_multigraph(inst, walk);

    // Keep a spanning tree of the support, then peel cycles out of the rest.
    std::map<std::pair<int, int>, int> extra;
    for (const auto& [key, use] : g.edges) extra[key] = use.mult;
    std::vector<std::vector<int>> adj(g.vertex_count);
    for (const auto& [key, use] : g.edges) {
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    std::vector<int> order{walk.vertices.front()};
    std::vector<char> seen(g.vertex_count, 0);
    seen[walk.vertices.front()] = 1;
    std::set<std::pair<int, int>> tree;
    for (size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        for (int u : adj[v]) {
            if (seen[u]) continue;
            seen[u] = 1;
            tree.insert(std::minmax(u, v));
            order.push_back(u);
        }
    }
    for (const auto& key : tree) --extra[key];

    // Parallel leftovers cancel in pairs; what remains is a set of simple
    // edges whose cyclic parts can be dropped one cycle at a time.
    for (auto& [key, mult] : extra) mult %= 2;
    for (;;) {
        // 2-core of the leftover edges: trim degree-<=1 vertices away.
        std::set<std::pair<int, int>> core;
        std::vector<int> deg(g.vertex_count, 0);
        for (const auto& [key, mult] : extra)
            if (mult > 0) {
                core.insert(key);
                ++deg[key.first];
                ++deg[key.second];
            }
        bool trimmed = true;
        while (trimmed) {
            trimmed = false;
            for (auto it = core.begin(); it != core.end();) {
                if (deg[it->first] <= 1 || deg[it->second] <= 1) {
                    --deg[it->first];
                    --deg[it->second];
                    it = core.erase(it);
                    trimmed = true;
                } else {
                    ++it;
                }
            }
        }
        if (core.empty()) break;
        // Every core vertex has degree >= 2, so walking without immediate
        // backtracking must revisit a vertex; the tail is a cycle.
        std::vector<std::vector<int>> adj_core(g.vertex_count);
        for (const auto& [a, b] : core) {
            adj_core[a].push_back(b);
            adj_core[b].push_back(a);
        }
        for (auto& nbrs : adj_core) std::sort(nbrs.begin(), nbrs.end());
        const int first = core.begin()->first;
        std::vector<int> path{first};
        std::vector<int> pos(g.vertex_count, -1);
        pos[first] = 0;
        int prev = -1, cur = first;
        std::vector<int> cycle;
        while (cycle.empty()) {
            int next = -1;
            for (int u : adj_core[cur])
                if (u != prev) {
                    next = u;
                    break;
                }
            if (pos[next] >= 0) {
                cycle.assign(path.begin() + pos[next], path.end());
            } else {
                pos[next] = static_cast<int>(path.size());
                path.push_back(next);
                prev = cur;
                cur = next;
            }
        }
        for (size_t i = 0; i < cycle.size(); ++i)
            --extra[std::minmax(cycle[i], cycle[(i + 1) % cycle.size()])];
    }

    WalkMultigraph minimal;
    minimal.vertex_count = g.vertex_count;
    for (const auto& [key, use] : g.edges) {
        const int mult = (tree.count(key) ? 1 : 0) + extra[key];
        if (mult > 0) minimal.add_edge(key.first, key.second, use.weight, mult);
    }
    const auto arcs = orient_eulerian_multigraph(minimal);
    return make_walk(inst, directed_euler_tour(arcs, walk.vertices.front()));
}

std::vector<std::pair<int, int>> orient_eulerian_multigraph(const WalkMultigraph& g) {
    std::vector<std::pair<int, int>> arcs;
    // Doubled edges balance themselves with one arc per direction.
    WalkMultigraph singles;
    singles.vertex_count = g.vertex_count;
    for (const auto& [key, use] : g.edges) {
        if (use.mult > 2) throw Error(ErrorCode::NotEulerian, "orientation needs multiplicity <= 2");
        if (use.mult == 2) {
            arcs.emplace_back(key.first, key.second);
            arcs.emplace_back(key.second, key.first);
        } else if (use.mult == 1) {
            singles.add_edge(key.first, key.second, use.weight, 1);
        }
    }
    // The single edges form an even-degree graph; orient along Euler tours of
    // each connected piece.
    for (;;) {
        const auto support = singles.support_vertices();
        if (support.empty()) break;
        // Peel the component containing the smallest support vertex.
        WalkMultigraph component;
        component.vertex_count = singles.vertex_count;
        std::vector<char> seen(singles.vertex_count, 0);
        std::vector<int> stack{support.front()};
        seen[support.front()] = 1;
        std::vector<std::vector<int>> adj(singles.vertex_count);
        for (const auto& [key, use] : singles.edges)
            if (use.mult > 0) {
                adj[key.first].push_back(key.second);
                adj[key.second].push_back(key.first);
            }
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u : adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
        WalkMultigraph rest;
        rest.vertex_count = singles.vertex_count;
        for (const auto& [key, use] : singles.edges) {
            if (use.mult == 0) continue;
            (seen[key.first] ? component : rest).add_edge(key.first, key.second, use.weight, use.mult);
        }
        const auto tour = euler_tour(component, support.front());
        for (size_t i = 1; i < tour.size(); ++i) arcs.emplace_back(tour[i - 1], tour[i]);
        singles = std::move(rest);
    }
    std::sort(arcs.begin(), arcs.end());
    return arcs;
}

std::vector<int> directed_euler_tour(const std::vector<std::pair<int, int>>& arcs, int start) {
    if (arcs.empty()) return {start};
    std::map<int, std::vector<int>> out_arcs;
    std::map<int, int> balance;
    for (auto [u, v] : arcs) {
        out_arcs[u].push_back(v);
        balance[u] += 1;
        balance[v] -= 1;
    }
    for (const auto& [v, b] : balance)
        if (b != 0)
            throw Error(ErrorCode::CirculationDetected,
                        "vertex " + std::to_string(v) + " has unbalanced flow");
    if (out_arcs.find(start) == out_arcs.end())
        throw Error(ErrorCode::CirculationDetected, "selected edges avoid the start vertex");
    for (auto& [v, outs] : out_arcs) std::sort(outs.begin(), outs.end());

    std::map<int, size_t> cursor;
    std::vector<int> stack{start}, tour;
    while (!stack.empty()) {
        const int v = stack.back();
        auto it = out_arcs.find(v);
        if (it != out_arcs.end() && cursor[v] < it->second.size()) {
            stack.push_back(it->second[cursor[v]++]);
        } else {
            tour.push_back(v);
            stack.pop_back();
        }
    }
    std::reverse(tour.begin(), tour.end());
    if (tour.size() != arcs.size() + 1)
        throw Error(ErrorCode::CirculationDetected,
                    "selected edges contain a closed flow not reachable from the start");
    return tour;
}

std::vector<double> walk_to_assignment(const IlpModel& model, const InspectionInstance& inst,
                                       const std::vector<int>& walk_vertices) {
    std::vector<double> values(model.variables.size(), 0.0);
    if (walk_vertices.size() < 3)
        throw Error(ErrorCode::DegenerateInstance, "assignment needs a walk with at least two vertices");

    std::set<std::pair<int, int>> used;
    for (size_t i = 1; i < walk_vertices.size(); ++i) {
        const int u = walk_vertices[i - 1];
        const int v = walk_vertices[i];
        if (!used.insert({u, v}).second)
            throw Error(ErrorCode::InvalidId, "walk repeats directed edge " + arc_name(u, v));
        const int xi = model.variable_index(arc_name(u, v));
        if (xi < 0) throw Error(ErrorCode::InvalidId, "walk uses an edge missing from the model");
        values[xi] = 1.0;
    }

    // Split into start-to-start segments and spread each interior edge's two
    // charges: the j-th interior position feeds 2j/(L-1) forward.
    const int s = inst.start;
    if (walk_vertices.front() != s || walk_vertices.back() != s)
        throw Error(ErrorCode::InvalidId, "assignment needs a walk closed at the start");
    size_t begin = 0;
    while (begin + 1 < walk_vertices.size()) {
        size_t end = begin + 1;
        while (walk_vertices[end] != s) ++end;
        const size_t len = end - begin;  // edges in this segment
        if (len >= 3) {
            for (size_t i = 2; i <= len - 1; ++i) {
                const int a = walk_vertices[begin + i - 1];
                const int b = walk_vertices[begin + i];
                const double head = 2.0 * (i - 1) / static_cast<double>(len - 1);
                const int head_var = model.variable_index(charge_name(a, b, b));
                const int tail_var = model.variable_index(charge_name(a, b, a));
                if (head_var < 0 || tail_var < 0)
                    throw Error(ErrorCode::InvalidId, "charge variable missing for interior edge");
                values[head_var] += head;
                values[tail_var] += 2.0 - head;
            }
        }
        begin = end;
    }

    // Collected-color indicators.
    if (!model.z_vars.empty()) {
        std::set<int> collected;
        for (int v : walk_vertices) collected.insert(inst.colors[v].begin(), inst.colors[v].end());
        for (size_t i = 0; i < model.z_vars.size(); ++i)
            if (collected.count(model.color_of_z[i])) values[model.z_vars[i]] = 1.0;
    }
    return values;
}

}  // namespace gi
