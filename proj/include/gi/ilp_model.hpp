#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gi/instance.hpp"
#include "gi/multigraph.hpp"
#include "gi/walk.hpp"

namespace gi {

enum class VarKind { Binary, ContinuousNonneg };
enum class Sense { LessEqual, Equal, GreaterEqual };

struct IlpVariable {
    std::string name;
    VarKind kind = VarKind::Binary;
    double objective = 0.0;
};

struct IlpConstraint {
    std::string name;
    std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
    Sense sense = Sense::Equal;
    double rhs = 0.0;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Timeout };

const char* solve_status_name(SolveStatus status);

struct IlpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> values;  // indexed like IlpModel::variables; empty if none
};

/// What the model was built from; lets the reference backend solve the
/// underlying combinatorial problem instead of the ILP itself.
struct ModelSource {
    InspectionInstance instance;                 // normalized
    std::optional<WalkMultigraph> merge_graph;   // set for walk-merging models
};

/// Solver-agnostic minimization MILP with name tables mapping variables back
/// to graph entities.
struct IlpModel {
    std::vector<IlpVariable> variables;
    std::vector<IlpConstraint> constraints;

    // x-variable index -> directed edge (u, v); other kinds are not listed.
    std::vector<std::pair<int, int>> arc_vars_uv;
    std::vector<int> arc_vars;          // variable indices matching arc_vars_uv
    std::vector<int> color_of_z;        // z-variable color ids (parallel to z_vars)
    std::vector<int> z_vars;

    std::shared_ptr<const ModelSource> source;

    int variable_index(const std::string& name) const;  // -1 when absent
};

/// Fig.-style flow model: x arcs with the walk weight objective, charge
/// variables preventing circulations, and color-collection rows.
IlpModel build_model(const InspectionInstance& inst);

/// Caps usage of the given simple edge at one direction total.
void add_capacity_constraint(IlpModel& model, int u, int v);

/// Serializes to LP text (minimize section, rows, bounds, binaries list).
std::string export_lp(const IlpModel& model);

/// Parses "status ..." / "objective ..." / "name value" lines.
IlpSolution import_solution(const std::string& text, const IlpModel& model);

/// Checks an assignment against every row and variable bound.
bool assignment_feasible(const IlpModel& model, const std::vector<double>& values,
                         std::string* reason = nullptr, double tolerance = 1e-6);

/// Rewrites a closed walk into one whose multigraph has at most 2n-2 edge
/// copies by discarding cycles outside a spanning tree. Zero-weight cycles
/// are the only ones an optimal walk can lose.
Walk minimize_walk_edges(const InspectionInstance& inst, const Walk& walk);

/// Orients a multiplicity-<=2 Eulerian multigraph into directed edges with no
/// repeats: doubled edges get one arc each way, single edges follow a cycle
/// decomposition.
std::vector<std::pair<int, int>> orient_eulerian_multigraph(const WalkMultigraph& g);

/// Euler tour over directed edges from `start`; every arc used exactly once.
std::vector<int> directed_euler_tour(const std::vector<std::pair<int, int>>& arcs, int start);

/// Forward direction of the model correctness argument: turns a closed walk
/// without repeated arcs into a full variable assignment (x from arcs, y by
/// distributing each non-start edge's two charges along its segment).
std::vector<double> walk_to_assignment(const IlpModel& model, const InspectionInstance& inst,
                                       const std::vector<int>& walk_vertices);

}  // namespace gi
