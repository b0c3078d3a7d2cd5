#include "gi/solver_ilp.hpp"

#include <cmath>
#include <string>

namespace gi {

IlpSolution solve_ilp(const IlpModel& model, SolverBackend& backend, double time_limit_seconds,
                      int threads) {
    if (!backend.capabilities().milp)
        throw Error(ErrorCode::BackendUnavailable, backend.identity() + " does not support MILP");
    SolveOptions opts;
    opts.relax = false;
    opts.has_time_limit = time_limit_seconds >= 0;
    opts.time_limit_seconds = std::max(0.0, time_limit_seconds);
    opts.threads = threads;
    return backend.solve(model, opts);
}

Walk recover_walk(const InspectionInstance& inst, const IlpModel& model, const IlpSolution& sol) {
    if (sol.status != SolveStatus::Optimal && sol.status != SolveStatus::Feasible)
        throw Error(ErrorCode::ModelRejected,
                    std::string("cannot recover a walk from a ") + solve_status_name(sol.status) +
                        " solution");
    std::vector<std::pair<int, int>> arcs;
    for (size_t i = 0; i < model.arc_vars.size(); ++i) {
        const double x = sol.values.at(model.arc_vars[i]);
        const long long rounded = std::llround(x);
        if (std::abs(x - rounded) > 1e-6)
            throw Error(ErrorCode::ModelRejected,
                        "arc variable far from integral: " + std::to_string(x));
        if (rounded == 1) arcs.push_back(model.arc_vars_uv[i]);
        if (rounded > 1 || rounded < 0)
            throw Error(ErrorCode::ModelRejected, "arc variable outside {0,1}");
    }
    if (arcs.empty()) return make_walk(inst, {inst.start});
    const auto tour = directed_euler_tour(arcs, inst.start);  // throws CirculationDetected
    Walk walk = make_walk(inst, tour);
    const double scale = std::max(1.0, std::abs(sol.objective));
    if (std::abs(walk.weight - sol.objective) > 1e-6 * scale)
        throw Error(ErrorCode::ModelRejected, "recovered walk weight " + std::to_string(walk.weight) +
                                                  " does not match objective " +
                                                  std::to_string(sol.objective));
    return walk;
}

double lp_lower_bound(const InspectionInstance& inst, SolverBackend& backend) {
    if (inst.quota == 0) return 0.0;
    if (!backend.capabilities().lp_relaxation)
        throw Error(ErrorCode::BackendUnavailable,
                    backend.identity() + " does not support LP relaxations");
    const IlpModel model = build_model(inst);
    SolveOptions opts;
    opts.relax = true;
    const IlpSolution sol = backend.solve(model, opts);
    if (sol.status != SolveStatus::Optimal)
        throw Error(ErrorCode::ModelRejected, std::string("LP relaxation ended ") +
                                                  solve_status_name(sol.status));
    return sol.objective;
}

Walk solve_instance_ilp(const InspectionInstance& inst, SolverBackend& backend,
                        double time_limit_seconds, int threads) {
    if (inst.quota == 0) return make_walk(inst, {inst.start});
    const IlpModel model = build_model(inst);
    const IlpSolution sol = solve_ilp(model, backend, time_limit_seconds, threads);
    if (sol.status == SolveStatus::Timeout)
        throw Error(ErrorCode::Timeout, "ILP solve hit the time limit with no incumbent");
    if (sol.status == SolveStatus::Infeasible)
        throw Error(ErrorCode::InfeasibleQuota, "ILP reports the instance infeasible");
    return recover_walk(inst, model, sol);
}

}  // namespace gi
