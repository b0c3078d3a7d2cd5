#include <doctest.h>

#include <algorithm>

#include "gi/bounds.hpp"
#include "gi/metric_closure.hpp"
#include "gi/oracle.hpp"
#include "gi/solver_dp.hpp"
#include "support.hpp"

using namespace gi;

TEST_SUITE("algorithm_st") {
    TEST_CASE("adversarial star walks every unique-color leaf") {
        for (int t = 2; t <= 8; ++t) {
            const auto inst = test::tightness_star(t);
            const auto mc = MetricClosure::compute(inst);
            const auto walk = algorithm_st(inst, mc);
            CHECK(walk.weight == doctest::Approx(2.0 * t));
            CHECK(static_cast<int>(walk.collected.size()) >= t);
        }
    }

    TEST_CASE("single vertex holding every color: out and back") {
        InspectionInstance inst;
        inst.vertex_count = 3;
        inst.color_count = 3;
        inst.start = 0;
        inst.quota = 3;
        inst.colors = {{}, {}, {0, 1, 2}};
        inst.edges = {{0, 1, 2.0}, {1, 2, 3.0}};
        const auto mc = MetricClosure::compute(inst);
        const auto walk = algorithm_st(inst, mc, 3);
        CHECK(walk.weight == doctest::Approx(10.0));  // twice the distance 5
    }

    TEST_CASE("sandwiched by the optimum and its quota multiple") {
        for (uint64_t seed = 300; seed <= 320; ++seed) {
            auto inst = normalize_instance(test::random_instance(seed, 10, 6)).instance;
            if (inst.quota == 0) continue;
            const auto mc = MetricClosure::compute(inst);
            const auto opt = solve_dp(inst, mc);
            const auto st = algorithm_st(inst, mc);
            CHECK(st.weight >= opt.weight - 1e-9);
            CHECK(st.weight <= inst.quota * opt.weight + 1e-9);
            CHECK(static_cast<int>(st.collected.size()) >= inst.quota);
            std::string why;
            CHECK_MESSAGE(validate_walk(inst, st, &why), why);
        }
    }

    TEST_CASE("infeasible quota raises") {
        InspectionInstance inst;
        inst.vertex_count = 2;
        inst.color_count = 3;
        inst.start = 0;
        inst.quota = 2;
        inst.colors = {{}, {0}};
        inst.edges = {{0, 1, 1.0}};
        const auto mc = MetricClosure::compute(inst);
        CHECK_THROWS_AS(algorithm_st(inst, mc, 2), Error);
    }
}

TEST_SUITE("bound_sweep") {
    TEST_CASE("zero quota gives a zero-width report") {
        auto inst = normalize_instance(test::random_instance(321, 8, 4)).instance;
        ReferenceBackend backend;  // never consulted for quota 0
        const auto mc = MetricClosure::compute(inst);
        const auto reports = bound_sweep(inst, mc, {0}, backend);
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].upper == 0.0);
        CHECK(reports[0].lower == 0.0);
        CHECK(reports[0].witness.vertices == std::vector<int>{inst.start});
    }

    TEST_CASE("upper bounds are nondecreasing in the quota") {
        auto backend = test::external_backend_or_null();
        if (!backend) {
            MESSAGE("external backend unavailable; skipping");
            return;
        }
        for (uint64_t seed = 322; seed <= 328; ++seed) {
            auto inst = normalize_instance(test::random_instance(seed, 10, 6)).instance;
            const int top = static_cast<int>(inst.placed_colors().size());
            std::vector<int> quotas;
            for (int t = 0; t <= top; ++t) quotas.push_back(t);
            const auto mc = MetricClosure::compute(inst);
            const auto reports = bound_sweep(inst, mc, quotas, *backend);
            for (size_t i = 1; i < reports.size(); ++i)
                CHECK(reports[i].upper >= reports[i - 1].upper - 1e-12);
            for (const auto& r : reports) {
                CHECK(r.lower <= r.upper + 1e-6);
                CHECK(static_cast<int>(r.witness.collected.size()) >= r.quota);
                CHECK(r.witness.weight == doctest::Approx(r.upper));
            }
        }
    }

    TEST_CASE("reports sandwich the DP optimum") {
        auto backend = test::external_backend_or_null();
        if (!backend) {
            MESSAGE("external backend unavailable; skipping");
            return;
        }
        for (uint64_t seed = 330; seed <= 336; ++seed) {
            auto inst = normalize_instance(test::random_instance(seed, 10, 6)).instance;
            const int top = static_cast<int>(inst.placed_colors().size());
            std::vector<int> quotas;
            for (int t = 0; t <= top; ++t) quotas.push_back(t);
            const auto mc = MetricClosure::compute(inst);
            const auto reports = bound_sweep(inst, mc, quotas, *backend);
            DpTable table(inst, mc, top);
            for (const auto& r : reports) {
                const auto best = table.best_for_quota(r.quota);
                REQUIRE(best.has_value());
                CHECK(r.lower <= best->weight + 1e-6);
                CHECK(best->weight <= r.upper + 1e-6);
            }
        }
    }
}
