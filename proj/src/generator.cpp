#include "gi/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace gi {

GeneratorProfile generator_profile_from(const std::string& name) {
    if (name == "crisp-like") return GeneratorProfile::CrispLike;
    if (name == "drone-like") return GeneratorProfile::DroneLike;
    if (name == "uniform") return GeneratorProfile::Uniform;
    throw Error(ErrorCode::InvalidConfig, "unknown generator profile '" + name + "'");
}

namespace {

struct ProfileParams {
    double colors_per_vertex_ratio;  // |C| as a fraction of n at the reference scale
    double mean_colors_per_vertex;   // calibration target at the reference |C|
    double reference_colors;
    double start_colors;             // desired |col(s)| at the reference |C|
    double weight_lo, weight_hi;
};

ProfileParams params_for(GeneratorProfile profile, int n) {
    switch (profile) {
        case GeneratorProfile::CrispLike:
            return {4200.0 / 1000.0, 183.39, 4200.0, 535.0, 2e-6, 0.060926};
        case GeneratorProfile::DroneLike:
            return {3204.0 / 1000.0, 22.67, 3204.0, 10.0, 0.51, 18.51};
        case GeneratorProfile::Uniform: {
            const double colors = std::max(2.0, n / 4.0);
            return {colors / n, std::max(1.0, colors / 10.0), colors, 0.0, 0.1, 10.0};
        }
    }
    throw Error(ErrorCode::InvalidConfig, "unknown profile");
}

double sq_dist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double sq = 0.0;
    for (int d = 0; d < 3; ++d) sq += (a[d] - b[d]) * (a[d] - b[d]);
    return sq;
}

}  // namespace

InspectionInstance generate_instance(GeneratorProfile profile, int n, uint64_t seed) {
    if (n < 2) throw Error(ErrorCode::InvalidId, "generator needs at least two vertices");
    const ProfileParams params = params_for(profile, n);
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + static_cast<uint64_t>(profile) + 1);
    std::uniform_real_distribution<double> coord(0.0, 1.0);

    InspectionInstance inst;
    inst.vertex_count = n;
    const int color_count = std::max(1, static_cast<int>(std::lround(params.colors_per_vertex_ratio * n)));
    inst.color_count = color_count;

    std::vector<std::array<double, 3>> vertex_pos(n);
    for (auto& p : vertex_pos) p = {coord(rng), coord(rng), coord(rng)};
    inst.color_meta.resize(color_count);
    for (auto& p : inst.color_meta) p = {coord(rng), coord(rng), coord(rng)};

    // k-nearest-neighbour geometric graph, then stitch any leftover
    // components through their closest vertex pairs.
    const int neighbors = std::min(n - 1, 6);
    std::vector<std::pair<int, int>> links;
    for (int v = 0; v < n; ++v) {
        std::vector<std::pair<double, int>> near;
        near.reserve(n - 1);
        for (int u = 0; u < n; ++u)
            if (u != v) near.emplace_back(sq_dist(vertex_pos[v], vertex_pos[u]), u);
        std::partial_sort(near.begin(), near.begin() + neighbors, near.end());
        for (int i = 0; i < neighbors; ++i) links.emplace_back(std::min(v, near[i].second),
                                                               std::max(v, near[i].second));
    }
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());

    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    auto root = [&](int v) {
        while (comp[v] != v) v = comp[v] = comp[comp[v]];
        return v;
    };
    for (auto [u, v] : links) comp[root(u)] = root(v);
    for (;;) {
        int a = -1, b = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v)
            for (int u = v + 1; u < n; ++u) {
                if (root(u) == root(v)) continue;
                const double d = sq_dist(vertex_pos[v], vertex_pos[u]);
                if (d < best) {
                    best = d;
                    a = v;
                    b = u;
                }
            }
        if (a < 0) break;
        links.emplace_back(std::min(a, b), std::max(a, b));
        comp[root(a)] = root(b);
    }
    std::sort(links.begin(), links.end());

    const double max_len = std::sqrt(3.0);
    for (auto [u, v] : links) {
        const double len = std::sqrt(sq_dist(vertex_pos[u], vertex_pos[v]));
        const double w = params.weight_lo + (len / max_len) * (params.weight_hi - params.weight_lo);
        inst.edges.push_back({u, v, w});
    }

    // Visibility radius calibrated so the mean per-vertex color count matches
    // the profile (scaled with the universe size).
    const double mean_target =
        params.mean_colors_per_vertex * (static_cast<double>(color_count) / params.reference_colors);
    const size_t want = std::min<size_t>(
        static_cast<size_t>(n) * color_count,
        std::max<size_t>(1, static_cast<size_t>(std::llround(mean_target * n))));
    std::vector<double> all_sq;
    all_sq.reserve(static_cast<size_t>(n) * color_count);
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < color_count; ++c) all_sq.push_back(sq_dist(vertex_pos[v], inst.color_meta[c]));
    std::nth_element(all_sq.begin(), all_sq.begin() + (want - 1), all_sq.end());
    const double radius_sq = all_sq[want - 1];

    inst.colors.assign(n, {});
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < color_count; ++c)
            if (sq_dist(vertex_pos[v], inst.color_meta[c]) <= radius_sq) inst.colors[v].push_back(c);

    // Start vertex: the one whose visibility matches the profile target.
    const double start_target =
        params.start_colors * (static_cast<double>(color_count) / params.reference_colors);
    int start = 0;
    double start_gap = std::numeric_limits<double>::infinity();
    for (int v = 0; v < n; ++v) {
        const double gap = std::abs(static_cast<double>(inst.colors[v].size()) - start_target);
        if (gap < start_gap) {
            start_gap = gap;
            start = v;
        }
    }
    inst.start = start;
    inst.quota = static_cast<int>(inst.placed_colors().size());
    inst.validate();
    return inst;
}

}  // namespace gi
