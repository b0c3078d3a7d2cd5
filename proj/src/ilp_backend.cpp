#include "gi/ilp_backend.hpp"

#include <sys/types.h>
#include <sys/wait.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <spawn.h>
#include <unistd.h>

#include "gi/metric_closure.hpp"

extern char** environ;

namespace gi {

std::vector<IlpSolution> SolverBackend::solve_all(const std::vector<const IlpModel*>& models,
                                                  const SolveOptions& opts) {
    std::vector<IlpSolution> out;
    out.reserve(models.size());
    for (const IlpModel* model : models) out.push_back(solve(*model, opts));
    return out;
}

namespace {

std::optional<std::chrono::steady_clock::time_point> deadline_from(const SolveOptions& opts) {
    if (!opts.has_time_limit) return std::nullopt;
    return std::chrono::steady_clock::now() +
           std::chrono::microseconds(static_cast<long long>(opts.time_limit_seconds * 1e6));
}

IlpSolution assignment_solution(const IlpModel& model, std::vector<double> values,
                                SolveStatus status) {
    IlpSolution sol;
    sol.status = status;
    sol.values = std::move(values);
    sol.objective = 0.0;
    for (size_t i = 0; i < model.variables.size(); ++i)
        sol.objective += model.variables[i].objective * sol.values[i];
    std::string why;
    if (!assignment_feasible(model, sol.values, &why))
        throw Error(ErrorCode::ModelRejected, "reference assignment violates the model: " + why);
    return sol;
}

// Exhaustive search over all-binary models; used for hand-built models that
// carry no source instance.
IlpSolution enumerate_binary_model(const IlpModel& model,
                                   std::optional<std::chrono::steady_clock::time_point> deadline) {
    const size_t n = model.variables.size();
    for (const auto& var : model.variables)
        if (var.kind != VarKind::Binary)
            throw Error(ErrorCode::ModelRejected,
                        "reference backend enumerates only all-binary models without a source");
    if (n > 24) throw Error(ErrorCode::ModelRejected, "model too large for reference enumeration");
    IlpSolution best;
    best.status = SolveStatus::Infeasible;
    std::vector<double> values(n, 0.0);
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
        if (deadline && (bits & 255) == 0 && std::chrono::steady_clock::now() > *deadline) {
            if (best.status == SolveStatus::Optimal) best.status = SolveStatus::Feasible;
            else best.status = SolveStatus::Timeout;
            return best;
        }
        for (size_t i = 0; i < n; ++i) values[i] = (bits >> i) & 1 ? 1.0 : 0.0;
        if (!assignment_feasible(model, values, nullptr)) continue;
        double obj = 0.0;
        for (size_t i = 0; i < n; ++i) obj += model.variables[i].objective * values[i];
        if (best.status == SolveStatus::Infeasible || obj < best.objective) {
            best.status = SolveStatus::Optimal;
            best.objective = obj;
            best.values = values;
        }
    }
    return best;
}

}  // namespace

IlpSolution ReferenceBackend::solve(const IlpModel& model, const SolveOptions& opts) {
    if (opts.relax)
        throw Error(ErrorCode::BackendUnavailable, "reference backend cannot solve LP relaxations");
    const auto deadline = deadline_from(opts);
    if (deadline && std::chrono::steady_clock::now() > *deadline) {
        IlpSolution sol;
        sol.status = SolveStatus::Timeout;
        return sol;
    }
    if (!model.source) return enumerate_binary_model(model, deadline);

    const InspectionInstance& inst = model.source->instance;
    if (model.source->merge_graph) {
        // Walk-merging model: solve the spanning-subgraph problem directly and
        // replay the chosen multigraph as arcs. The edge-count minimization
        // can only shed zero-weight cycles of an optimal subgraph.
        const WalkMultigraph best = brute_force_mses(*model.source->merge_graph, limits_);
        const Walk lean = minimize_walk_edges(inst, make_walk(inst, euler_tour(best, inst.start)));
        const auto arcs = orient_eulerian_multigraph(walk_to_multigraph(inst, lean));
        const auto tour = directed_euler_tour(arcs, inst.start);
        return assignment_solution(model, walk_to_assignment(model, inst, tour),
                                   SolveStatus::Optimal);
    }

    const MetricClosure mc = MetricClosure::compute(inst);
    BruteForceResult res = brute_force_gi_ex(inst, mc, limits_, deadline);
    Walk lean = minimize_walk_edges(inst, res.walk);
    if (lean.trivial())
        throw Error(ErrorCode::DegenerateInstance, "model built for an instance with a trivial optimum");
    const auto arcs = orient_eulerian_multigraph(walk_to_multigraph(inst, lean));
    const auto tour = directed_euler_tour(arcs, inst.start);
    return assignment_solution(model, walk_to_assignment(model, inst, tour),
                               res.optimal ? SolveStatus::Optimal : SolveStatus::Feasible);
}

ExternalProcessBackend::ExternalProcessBackend(std::string executable, std::string arg_template)
    : executable_(std::move(executable)), arg_template_(std::move(arg_template)) {
    if (executable_.empty())
        throw Error(ErrorCode::BackendUnavailable, "external backend requires an executable path");
    threads_ = static_cast<int>(std::thread::hardware_concurrency());
    if (threads_ < 1) threads_ = 1;
}

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        auto base = std::filesystem::temp_directory_path() / "gi-backend-XXXXXX";
        std::string templ = base.string();
        if (!mkdtemp(templ.data())) throw Error(ErrorCode::IoError, "mkdtemp failed");
        path = templ;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

int run_process(const std::vector<std::string>& argv, double wait_seconds_limit, bool has_limit) {
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);

    pid_t pid = -1;
    const int rc = posix_spawnp(&pid, cargv[0], nullptr, nullptr, cargv.data(), environ);
    if (rc != 0)
        throw Error(ErrorCode::BackendUnavailable,
                    "cannot launch '" + argv[0] + "': " + std::strerror(rc));

    const auto started = std::chrono::steady_clock::now();
    for (;;) {
        int status = 0;
        const pid_t done = waitpid(pid, &status, WNOHANG);
        if (done == pid) {
            if (WIFEXITED(status)) return WEXITSTATUS(status);
            return -1;
        }
        if (done < 0) throw Error(ErrorCode::IoError, "waitpid failed");
        if (has_limit) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            // Give the solver its limit plus slack for startup and I/O.
            if (elapsed > wait_seconds_limit) {
                kill(pid, SIGKILL);
                waitpid(pid, &status, 0);
                return -2;
            }
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
}

std::vector<std::string> split_template(const std::string& templ) {
    std::vector<std::string> out;
    std::istringstream in(templ);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

IlpSolution ExternalProcessBackend::solve(const IlpModel& model, const SolveOptions& opts) {
    return solve_all({&model}, opts).front();
}

std::vector<IlpSolution> ExternalProcessBackend::solve_all(const std::vector<const IlpModel*>& models,
                                                           const SolveOptions& opts) {
    if (models.empty()) return {};
    TempDir dir;
    std::vector<std::string> lp_paths, sol_paths;
    for (size_t i = 0; i < models.size(); ++i) {
        const auto lp = dir.path / ("model_" + std::to_string(i) + ".lp");
        std::ofstream out(lp);
        out << export_lp(*models[i]);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + lp.string());
        lp_paths.push_back(lp.string());
        sol_paths.push_back((dir.path / ("model_" + std::to_string(i) + ".sol")).string());
    }

    std::vector<std::string> argv{executable_};
    if (!arg_template_.empty() && models.size() == 1) {
        for (const auto& tok : split_template(arg_template_)) {
            std::string expanded = tok;
            auto sub = [&](const std::string& key, const std::string& value) {
                const auto at = expanded.find(key);
                if (at != std::string::npos) expanded = expanded.substr(0, at) + value +
                                                        expanded.substr(at + key.size());
            };
            sub("{lp}", lp_paths[0]);
            sub("{sol}", sol_paths[0]);
            sub("{relax}", opts.relax ? "--relax" : "");
            sub("{limit}", opts.has_time_limit ? std::to_string(opts.time_limit_seconds) : "");
            sub("{threads}", std::to_string(opts.threads));
            if (!expanded.empty()) argv.push_back(expanded);
        }
    } else {
        if (opts.relax) argv.push_back("--relax");
        if (opts.has_time_limit) {
            argv.push_back("--time-limit");
            argv.push_back(std::to_string(opts.time_limit_seconds));
        }
        argv.push_back("--threads");
        argv.push_back(std::to_string(opts.threads));
        for (const auto& lp : lp_paths) argv.push_back(lp);
    }

    const double per_model = opts.has_time_limit ? opts.time_limit_seconds : 0.0;
    const double wait_limit = per_model * 1.05 * static_cast<double>(models.size()) + 30.0;
    const int rc = run_process(argv, wait_limit, opts.has_time_limit);

    std::vector<IlpSolution> out;
    for (size_t i = 0; i < models.size(); ++i) {
        std::ifstream in(sol_paths[i]);
        if (!in) {
            if (rc == -2) {
                IlpSolution sol;
                sol.status = SolveStatus::Timeout;
                out.push_back(sol);
                continue;
            }
            throw Error(ErrorCode::BackendUnavailable,
                        "backend produced no solution file (exit code " + std::to_string(rc) + ")");
        }
        std::stringstream buf;
        buf << in.rdbuf();
        out.push_back(import_solution(buf.str(), *models[i]));
    }
    return out;
}

std::unique_ptr<SolverBackend> make_backend(const std::string& path, const std::string& arg_template) {
    std::string exe = path;
    if (exe.empty()) {
        const char* env = std::getenv("GI_BACKEND_PATH");
        if (env) exe = env;
    }
    if (exe.empty()) return std::make_unique<ReferenceBackend>();
    return std::make_unique<ExternalProcessBackend>(exe, arg_template);
}

}  // namespace gi
