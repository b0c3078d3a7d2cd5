#pragma once

#include "gi/ilp_backend.hpp"
#include "gi/ilp_model.hpp"
#include "gi/instance.hpp"
#include "gi/walk.hpp"

namespace gi {

/// Solves the model on the given backend under a wall-clock limit in seconds
/// (<= 0 requests an immediate timeout probe).
IlpSolution solve_ilp(const IlpModel& model, SolverBackend& backend, double time_limit_seconds,
                      int threads = 1);

/// Turns a solved flow model into a closed walk: selected arcs form an
/// Eulerian multigraph anchored at the start; the Euler tour is the walk.
Walk recover_walk(const InspectionInstance& inst, const IlpModel& model, const IlpSolution& sol);

/// Objective of the LP relaxation; a valid lower bound on the optimal walk.
double lp_lower_bound(const InspectionInstance& inst, SolverBackend& backend);

/// Convenience wrapper: build, solve, recover.
Walk solve_instance_ilp(const InspectionInstance& inst, SolverBackend& backend,
                        double time_limit_seconds, int threads = 1);

}  // namespace gi
