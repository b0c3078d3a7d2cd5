#include "gi/walk.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace gi {

namespace {

// Weight of the edge u-v, or throws when absent.
double edge_weight(const std::map<std::pair<int, int>, double>& weights, int u, int v) {
    auto it = weights.find(std::minmax(u, v));
    if (it == weights.end())
        throw Error(ErrorCode::InvalidId,
                    "walk uses missing edge " + std::to_string(u) + "-" + std::to_string(v));
    return it->second;
}

std::map<std::pair<int, int>, double> weight_map(const InspectionInstance& inst) {
    std::map<std::pair<int, int>, double> weights;
    for (const Edge& e : inst.edges) weights[std::minmax(e.u, e.v)] = e.weight;
    return weights;
}

}  // namespace

Walk make_walk(const InspectionInstance& inst, std::vector<int> seq) {
    if (seq.empty()) seq.push_back(inst.start);
    Walk walk;
    const auto weights = weight_map(inst);
    std::set<int> collected;
    for (size_t i = 0; i < seq.size(); ++i) {
        const int v = seq[i];
        if (v < 0 || v >= inst.vertex_count) throw Error(ErrorCode::InvalidId, "walk vertex out of range");
        if (i > 0) walk.weight += edge_weight(weights, seq[i - 1], v);
        collected.insert(inst.colors[v].begin(), inst.colors[v].end());
    }
    walk.vertices = std::move(seq);
    walk.collected.assign(collected.begin(), collected.end());
    return walk;
}

bool validate_walk(const InspectionInstance& inst, const Walk& walk, std::string* reason,
                   double tolerance) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    if (walk.vertices.empty()) return fail("empty vertex sequence");
    if (walk.vertices.front() != inst.start || walk.vertices.back() != inst.start)
        return fail("walk is not closed at the start vertex");
    Walk recomputed;
    try {
        recomputed = make_walk(inst, walk.vertices);
    } catch (const Error& e) {
        return fail(e.what());
    }
    const double scale = std::max(1.0, std::abs(recomputed.weight));
    if (std::abs(recomputed.weight - walk.weight) > tolerance * scale)
        return fail("stored weight " + std::to_string(walk.weight) + " does not match recomputed " +
                    std::to_string(recomputed.weight));
    if (recomputed.collected != walk.collected) return fail("collected colors do not match");
    return true;
}

}  // namespace gi
