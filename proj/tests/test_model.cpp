#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrsched/model.hpp"
#include "mrsched/rng.hpp"

#include "helpers.hpp"

using namespace mrsched;

TEST_CASE("validation canonicalizes speeds and task lists descending") {
    Workload raw;
    raw.cluster.speeds = {1, 8};
    raw.jobs.push_back({1, 1.0, 0.0, {2, 4}, {}});
    const Workload w = validate_workload(raw);
    CHECK(w.cluster.speeds == std::vector<double>{8, 1});
    CHECK(w.jobs[0].map_sizes == std::vector<double>{4, 2});
}

TEST_CASE("validation rejects malformed workloads") {
    auto base = [] {
        Workload w;
        w.cluster.speeds = {1};
        w.jobs.push_back({1, 1.0, 0.0, {2}, {}});
        return w;
    };

    SUBCASE("empty job") {
        Workload w = base();
        w.jobs[0].map_sizes.clear();
        CHECK_THROWS_WITH_AS(validate_workload(w), doctest::Contains("neither map nor reduce"),
                             ValidationError);
    }
    SUBCASE("zero speed") {
        Workload w = base();
        w.cluster.speeds = {0};
        CHECK_THROWS_AS(validate_workload(w), ValidationError);
    }
    SUBCASE("negative speed") {
        Workload w = base();
        w.cluster.speeds = {8, -1};
        CHECK_THROWS_AS(validate_workload(w), ValidationError);
    }
    SUBCASE("zero task size") {
        Workload w = base();
        w.jobs[0].reduce_sizes = {0.0};
        CHECK_THROWS_AS(validate_workload(w), ValidationError);
    }
    SUBCASE("duplicate id") {
        Workload w = base();
        w.jobs.push_back({1, 1.0, 0.0, {1}, {}});
        CHECK_THROWS_AS(validate_workload(w), ValidationError);
    }
    SUBCASE("ids not 1..N") {
        Workload w = base();
        w.jobs[0].id = 3;
        CHECK_THROWS_AS(validate_workload(w), ValidationError);
    }
    SUBCASE("negative release") {
        Workload w = base();
        w.jobs[0].release = -1.0;
        CHECK_THROWS_AS(validate_workload(w), ValidationError);
    }
    SUBCASE("negative weight") {
        Workload w = base();
        w.jobs[0].weight = -0.5;
        CHECK_THROWS_AS(validate_workload(w), ValidationError);
    }
    SUBCASE("no machines") {
        Workload w = base();
        w.cluster.speeds.clear();
        CHECK_THROWS_AS(validate_workload(w), ValidationError);
    }
}

TEST_CASE("derived quantities") {
    // speeds 8,8,1,1; one job with 2 maps and 1 reduce
    Workload w = test::make_workload({8, 8, 1, 1}, {{1, 1.0, 0.0, {4, 2}, {3}}});
    const DerivedStats s = derive_stats(w);
    CHECK(s.mu == doctest::Approx(18));
    CHECK(s.q[0] == 3);
    CHECK(s.mu_j[0] == doctest::Approx(17));
    CHECK(s.p_map[0] == doctest::Approx(6));
    CHECK(s.p_reduce[0] == doctest::Approx(3));
    CHECK(s.p[0] == doctest::Approx(9));

    SUBCASE("single task job uses only the fastest machine") {
        Workload w2 = test::make_workload({5, 2, 1}, {{1, 1.0, 0.0, {7}, {}}});
        const DerivedStats s2 = derive_stats(w2);
        CHECK(s2.q[0] == 1);
        CHECK(s2.mu_j[0] == doctest::Approx(5));
    }
    SUBCASE("phase totals") {
        Workload w3 = test::make_workload({1}, {{1, 1.0, 0.0, {4, 2}, {3, 1}}});
        const DerivedStats s3 = derive_stats(w3);
        CHECK(s3.p_map[0] == doctest::Approx(6));
        CHECK(s3.p_reduce[0] == doctest::Approx(4));
        CHECK(s3.p[0] == doctest::Approx(10));
    }
}

TEST_CASE("task skewness") {
    SUBCASE("minimum over jobs") {
        Workload w = test::make_workload(
            {1, 1}, {{1, 1.0, 0.0, {4, 2}, {3, 1}}, {2, 1.0, 0.0, {5}, {5}}});
        CHECK(task_skewness(w) == doctest::Approx(1.0));
    }
    SUBCASE("map-only job") {
        Workload w = test::make_workload({1}, {{1, 1.0, 0.0, {1, 1, 1, 1}, {}}});
        CHECK(task_skewness(w) == doctest::Approx(4.0));
    }
    SUBCASE("many equal maps with one heavy reduce") {
        Workload w = test::make_workload(
            {1}, {{1, 1.0, 0.0, std::vector<double>(16, 64.0), {100}}});
        CHECK(task_skewness(w) == doctest::Approx(1124.0 / 164.0));
    }
}

TEST_CASE("stat invariants over random workloads") {
    Rng rng(20240917);
    for (int trial = 0; trial < 200; ++trial) {
        const Workload w = test::random_workload(rng, 10, 5);
        const DerivedStats s = derive_stats(w);
        CHECK(s.skew >= 1.0);
        for (std::size_t i = 0; i < w.jobs.size(); ++i) {
            CHECK(s.mu_j[i] <= s.mu + 1e-12);
            CHECK(s.q[i] <= w.cluster.machine_count());
            CHECK(s.q[i] <= w.jobs[i].task_count());
        }
    }
}

TEST_CASE("derive_stats is pure") {
    Rng rng(7);
    const Workload w = test::random_workload(rng, 6, 3);
    const DerivedStats a = derive_stats(w);
    const DerivedStats b = derive_stats(w);
    CHECK(a.mu == b.mu);
    CHECK(a.skew == b.skew);
    CHECK(a.mu_j == b.mu_j);
    CHECK(a.p == b.p);
}
