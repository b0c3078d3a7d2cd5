#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gi/merge.hpp"
#include "gi/metric_closure.hpp"
#include "gi/oracle.hpp"
#include "support.hpp"

using namespace gi;

namespace {

InspectionInstance square() {
    InspectionInstance inst;
    inst.vertex_count = 4;
    inst.color_count = 3;
    inst.start = 0;
    inst.quota = 3;
    inst.colors = {{}, {0}, {1}, {2}};
    inst.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}};
    return inst;
}

/// Random closed walks over the closure of a small instance; unions stay
/// small enough for the exhaustive reference.
std::vector<Walk> random_walks(const InspectionInstance& inst, const MetricClosure& mc,
                               uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<Walk> walks;
    for (int i = 0; i < count; ++i) {
        std::vector<int> seq{inst.start};
        const int hops = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int h = 0; h < hops; ++h)
            seq.push_back(std::uniform_int_distribution<int>(0, inst.vertex_count - 1)(rng));
        seq.push_back(inst.start);
        walks.push_back(expand_closure_walk(inst, seq, mc));
    }
    return walks;
}

}  // namespace

TEST_SUITE("concat_merge") {
    TEST_CASE("weights add up") {
        const auto inst = square();
        const auto out_and_back = make_walk(inst, {0, 1, 0});
        const auto in = MergeInput::build(inst, {out_and_back, out_and_back});
        const auto merged = concat_merge(in);
        CHECK(merged.weight == doctest::Approx(4.0));
        CHECK(merged.vertices == std::vector<int>{0, 1, 0, 1, 0});
    }

    TEST_CASE("single walk is the identity") {
        const auto inst = square();
        const auto walk = make_walk(inst, {0, 1, 2, 3, 0});
        const auto merged = concat_merge(MergeInput::build(inst, {walk}));
        CHECK(merged.vertices == walk.vertices);
        CHECK(merged.weight == doctest::Approx(walk.weight));
    }

    TEST_CASE("three random walks sum exactly") {
        const auto inst = normalize_instance(test::random_instance(400, 8, 4)).instance;
        const auto mc = MetricClosure::compute(inst);
        const auto walks = random_walks(inst, mc, 400, 3);
        double sum = 0.0;
        for (const auto& w : walks) sum += w.weight;
        const auto merged = concat_merge(MergeInput::build(inst, walks));
        CHECK(merged.weight == doctest::Approx(sum).epsilon(1e-12));
        std::set<int> visited;
        for (const auto& w : walks) visited.insert(w.vertices.begin(), w.vertices.end());
        for (int v : visited)
            CHECK(std::count(merged.vertices.begin(), merged.vertices.end(), v) > 0);
    }
}

TEST_SUITE("rule1") {
    TEST_CASE("multiplicities fold into 1..3") {
        WalkMultigraph g;
        g.vertex_count = 2;
        g.add_edge(0, 1, 1.0, 4);
        CHECK(apply_rule1(g).multiplicity(0, 1) == 2);
        g.edges.clear();
        g.add_edge(0, 1, 1.0, 5);
        CHECK(apply_rule1(g).multiplicity(0, 1) == 3);
        g.edges.clear();
        g.add_edge(0, 1, 1.0, 3);
        CHECK(apply_rule1(g).multiplicity(0, 1) == 3);
    }

    TEST_CASE("parity is preserved") {
        WalkMultigraph g;
        g.vertex_count = 3;
        g.add_edge(0, 1, 1.0, 6);
        g.add_edge(1, 2, 1.0, 7);
        const auto before = g.degrees();
        const auto after = apply_rule1(g).degrees();
        for (size_t v = 0; v < before.size(); ++v) CHECK(before[v] % 2 == after[v] % 2);
    }
}

TEST_SUITE("undeletable") {
    TEST_CASE("doubled path: everything is forced") {
        WalkMultigraph g;
        g.vertex_count = 4;
        g.add_edge(0, 1, 1.0, 2);
        g.add_edge(1, 2, 1.0, 2);
        g.add_edge(2, 3, 1.0, 2);
        const auto marked = find_undeletable(g);
        CHECK(marked.size() == 3);
    }

    TEST_CASE("doubled triangle: the cheap cases mark nothing") {
        WalkMultigraph g;
        g.vertex_count = 3;
        g.add_edge(0, 1, 1.0, 2);
        g.add_edge(1, 2, 1.0, 2);
        g.add_edge(0, 2, 1.0, 2);
        CHECK(find_undeletable(g).empty());
    }

    TEST_CASE("degree-2 vertex marks both incident edges") {
        // 1 sits on a 4-cycle with single copies: multigraph degree 2.
        WalkMultigraph g;
        g.vertex_count = 4;
        g.add_edge(0, 1, 1.0);
        g.add_edge(1, 2, 1.0);
        g.add_edge(2, 3, 1.0, 2);
        g.add_edge(0, 3, 1.0, 2);
        const auto marked = find_undeletable(g);
        CHECK(marked.count({0, 1}) == 1);
        CHECK(marked.count({1, 2}) == 1);
    }

    TEST_CASE("full 2-cut search finds pairs the cheap cases miss") {
        // Two doubled triangles joined by two single edges: the pair of
        // single edges is a 2-cut but neither is a bridge nor at degree 2.
        WalkMultigraph g;
        g.vertex_count = 6;
        g.add_edge(0, 1, 1.0, 2);
        g.add_edge(1, 2, 1.0, 2);
        g.add_edge(0, 2, 1.0, 2);
        g.add_edge(3, 4, 1.0, 2);
        g.add_edge(4, 5, 1.0, 2);
        g.add_edge(3, 5, 1.0, 2);
        g.add_edge(0, 3, 1.0, 2);
        g.add_edge(2, 5, 1.0, 2);
        CHECK(find_undeletable(g, false).count({0, 3}) == 0);
        const auto full = find_undeletable(g, true);
        CHECK(full.count({0, 3}) == 1);
        CHECK(full.count({2, 5}) == 1);
    }
}

TEST_SUITE("greedy_merge") {
    TEST_CASE("two copies of a square collapse to one") {
        const auto inst = square();
        const auto cycle = make_walk(inst, {0, 1, 2, 3, 0});
        const auto merged = greedy_merge(MergeInput::build(inst, {cycle, cycle}));
        CHECK(merged.weight == doctest::Approx(4.0));
    }

    TEST_CASE("a doubled tree walk cannot shrink") {
        InspectionInstance inst;
        inst.vertex_count = 4;
        inst.color_count = 3;
        inst.start = 0;
        inst.quota = 3;
        inst.colors = {{}, {0}, {1}, {2}};
        inst.edges = {{0, 1, 1.0}, {1, 2, 2.0}, {1, 3, 3.0}};
        const auto walk = make_walk(inst, {0, 1, 2, 1, 3, 1, 0});
        const auto merged = greedy_merge(MergeInput::build(inst, {walk}));
        CHECK(merged.weight == doctest::Approx(walk.weight));
    }

    TEST_CASE("always spanning and Eulerian, never heavier than concat") {
        for (uint64_t seed = 410; seed <= 440; ++seed) {
            const auto inst = normalize_instance(test::random_instance(seed, 9, 4)).instance;
            const auto mc = MetricClosure::compute(inst);
            const auto walks = random_walks(inst, mc, seed, 3);
            const auto in = MergeInput::build(inst, walks);
            const auto merged = greedy_merge(in);
            const auto concat = concat_merge(in);
            CHECK(merged.weight <= concat.weight + 1e-9);
            std::string why;
            CHECK_MESSAGE(validate_walk(inst, merged, &why), why);
            // Visits every input vertex, so it collects every input color.
            std::set<int> visited(merged.vertices.begin(), merged.vertices.end());
            for (const auto& w : walks)
                for (int v : w.vertices) CHECK(visited.count(v) == 1);
            std::set<int> collected(merged.collected.begin(), merged.collected.end());
            for (const auto& w : walks)
                for (int c : w.collected) CHECK(collected.count(c) == 1);
        }
    }
}

TEST_SUITE("exact_merge") {
    TEST_CASE("doubled square halves on both backends") {
        const auto inst = square();
        const auto cycle = make_walk(inst, {0, 1, 2, 3, 0});
        const auto in = MergeInput::build(inst, {cycle, cycle});
        ReferenceBackend reference;
        const auto merged = exact_merge(in, reference);
        CHECK(merged.weight == doctest::Approx(4.0));
        if (auto external = test::external_backend_or_null()) {
            const auto via_external = exact_merge(in, *external);
            CHECK(via_external.weight == doctest::Approx(4.0).epsilon(1e-6));
        }
    }

    TEST_CASE("exact <= greedy <= concat, and exact matches the reference") {
        ReferenceBackend reference;
        auto external = test::external_backend_or_null();
        for (uint64_t seed = 450; seed <= 470; ++seed) {
            const auto inst = normalize_instance(test::random_instance(seed, 8, 4)).instance;
            const auto mc = MetricClosure::compute(inst);
            const auto walks = random_walks(inst, mc, seed, 3);
            const auto in = MergeInput::build(inst, walks);
            const auto exact = exact_merge(in, external ? *external : reference);
            const auto greedy = greedy_merge(in);
            const auto concat = concat_merge(in);
            CHECK(exact.weight <= greedy.weight + 1e-9);
            CHECK(greedy.weight <= concat.weight + 1e-9);
            const auto oracle = brute_force_mses(in.unioned);
            CHECK(exact.weight == doctest::Approx(oracle.total_weight()).epsilon(1e-9));
            std::string why;
            CHECK_MESSAGE(validate_walk(inst, exact, &why), why);
        }
    }

    TEST_CASE("an already minimal walk survives unchanged") {
        const auto inst = square();
        const auto cycle = make_walk(inst, {0, 1, 2, 3, 0});
        ReferenceBackend reference;
        const auto merged = exact_merge(MergeInput::build(inst, {cycle}), reference);
        CHECK(merged.weight == doctest::Approx(cycle.weight));
    }

    TEST_CASE("trivial unions stay at the start") {
        const auto inst = square();
        const auto stay = make_walk(inst, {0});
        ReferenceBackend reference;
        const auto merged = exact_merge(MergeInput::build(inst, {stay, stay}), reference);
        CHECK(merged.vertices == std::vector<int>{0});
    }
}
