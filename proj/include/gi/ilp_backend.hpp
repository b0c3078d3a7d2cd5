#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gi/ilp_model.hpp"
#include "gi/oracle.hpp"

namespace gi {

struct BackendCapabilities {
    bool milp = false;
    bool lp_relaxation = false;
    bool time_limit = false;
    int threads = 1;
};

struct SolveOptions {
    bool relax = false;              // solve the LP relaxation
    double time_limit_seconds = 0;   // 0 or negative means no explicit limit
    bool has_time_limit = false;
    int threads = 1;
};

class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    virtual std::string identity() const = 0;
    virtual BackendCapabilities capabilities() const = 0;
    virtual IlpSolution solve(const IlpModel& model, const SolveOptions& opts) = 0;
    /// Batched variant; backends may amortize process startup.
    virtual std::vector<IlpSolution> solve_all(const std::vector<const IlpModel*>& models,
                                               const SolveOptions& opts);
};

/// Dependency-free backend. Models carrying their source instance are solved
/// by the exact brute-force reference (walks replayed into assignments and
/// checked against every row); small all-binary models are enumerated.
class ReferenceBackend : public SolverBackend {
public:
    explicit ReferenceBackend(OracleLimits limits = {}) : limits_(limits) {}
    std::string identity() const override { return "reference"; }
    BackendCapabilities capabilities() const override { return {true, false, true, 1}; }
    IlpSolution solve(const IlpModel& model, const SolveOptions& opts) override;

private:
    OracleLimits limits_;
};

/// Drives an external MILP solver through LP-file export and solution-file
/// import. The argument template may reference {lp} {sol} {relax} {limit}
/// {threads}; tokens that expand to nothing are dropped.
class ExternalProcessBackend : public SolverBackend {
public:
    explicit ExternalProcessBackend(std::string executable, std::string arg_template = "");
    std::string identity() const override { return "external:" + executable_; }
    BackendCapabilities capabilities() const override { return {true, true, true, threads_}; }
    IlpSolution solve(const IlpModel& model, const SolveOptions& opts) override;
    std::vector<IlpSolution> solve_all(const std::vector<const IlpModel*>& models,
                                       const SolveOptions& opts) override;

private:
    std::string executable_;
    std::string arg_template_;
    int threads_ = 1;
};

/// External backend from GI_BACKEND_PATH (or an explicit path), else the
/// reference backend.
std::unique_ptr<SolverBackend> make_backend(const std::string& path = "",
                                            const std::string& arg_template = "");

}  // namespace gi
