#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "test_support.hpp"
#include "tdma/bench.hpp"

using namespace tdma;

TEST_CASE("generate is deterministic per seed") {
    GenConfig cfg{6, 5, 1, 30, 0.5, 99};
    CHECK(generate(cfg) == generate(cfg));
    CHECK(generate(cfg, 7).setup_delay() == 7);
    auto other = cfg;
    other.seed = 100;
    CHECK_FALSE(generate(cfg) == generate(other));
}

TEST_CASE("generate at full density over 100 seeds") {
    GenConfig cfg;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        cfg.seed = seed;
        const auto inst = generate(cfg);
        const auto w = inst.weights();
        CHECK(std::all_of(w.begin(), w.end(), [](Weight x) { return x >= 1 && x <= 200; }));
        const auto stats = compute_stats(inst);
        CHECK(stats.delta == 50);
        CHECK(stats.workload >= 50);
        CHECK(stats.workload <= 50 * 200);
    }
}

TEST_CASE("generate honours density and rejects bad configs") {
    GenConfig sparse{40, 40, 1, 9, 0.25, 3};
    const auto w = generate(sparse).weights();
    const auto positive = std::count_if(w.begin(), w.end(), [](Weight x) { return x > 0; });
    CHECK(positive > 250);
    CHECK(positive < 550);

    CHECK_THROWS_AS(generate(GenConfig{0, 5}), std::invalid_argument);
    CHECK_THROWS_AS(generate(GenConfig{5, 5, 0, 9}), std::invalid_argument);
    CHECK_THROWS_AS(generate(GenConfig{5, 5, 9, 3}), std::invalid_argument);
    CHECK_THROWS_AS(generate(GenConfig{5, 5, 1, 9, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(generate(GenConfig{5, 5, 1, 9, 1.5}), std::invalid_argument);
    // A tiny density still yields a non-empty instance.
    CHECK_NOTHROW(generate(GenConfig{1, 1, 1, 9, 1e-9}));
}

TEST_CASE("run_experiment shape and ordering") {
    const GenConfig cfg{6, 6, 1, 20, 0.8, 5};
    const std::vector<Weight> ds{1, 4, 9};
    const std::vector<Algorithm> algs(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
    const auto result = run_experiment(cfg, ds, algs, 3);
    REQUIRE(result.records.size() == 3 * 3 * 4);
    CHECK(result.aggregates.size() == 4 * 3);
    for (std::size_t k = 0; k < result.records.size(); ++k) {
        const auto& r = result.records[k];
        CHECK(r.d == ds[k / 12]);
        CHECK(r.instance == (k / 4) % 3);
        CHECK(r.algorithm == algs[k % 4]);
        CHECK(r.cost >= r.lower_bound);
        const auto inst = generate(GenConfig{6, 6, 1, 20, 0.8, 5 + r.instance}, r.d);
        CHECK(r.lower_bound == compute_stats(inst).lower_bound);
    }
    CHECK(result.aggregates[0].algorithm == Algorithm::Mga);
    CHECK(result.aggregates[0].d == 1);
    CHECK(result.aggregates[11].algorithm == Algorithm::Apbs);
    CHECK(result.aggregates[11].d == 9);
}

TEST_CASE("run_experiment matches direct algorithm runs") {
    const GenConfig cfg{5, 7, 1, 30, 0.7, 11};
    const std::vector<Weight> ds{0, 3, 25};
    const std::vector<Algorithm> algs{Algorithm::Gwa, Algorithm::Apbs};
    const auto result = run_experiment(cfg, ds, algs, 2);
    for (const auto& r : result.records) {
        auto c = cfg;
        c.seed = cfg.seed + r.instance;
        CHECK(r.cost == run_algorithm(r.algorithm, generate(c, r.d)).cost);
    }
}

TEST_CASE("run_experiment rejects empty runs") {
    const std::vector<Weight> ds{1};
    const std::vector<Algorithm> algs{Algorithm::Mga};
    CHECK_THROWS_AS(run_experiment(GenConfig{}, ds, algs, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_experiment(GenConfig{}, std::span<const Weight>{}, algs, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_experiment(GenConfig{}, ds, std::span<const Algorithm>{}, 1), std::invalid_argument);
}

TEST_CASE("run_experiment with the oracle cross-check") {
    const GenConfig cfg{2, 3, 1, 3, 0.6, 1};
    const std::vector<Weight> ds{0, 2};
    const std::vector<Algorithm> algs(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
    const auto result = run_experiment(cfg, ds, algs, 20, ExperimentOptions{true, {}});
    for (const auto& r : result.records) {
        REQUIRE(r.oracle_cost.has_value());
        CHECK(*r.oracle_cost >= r.lower_bound);
        CHECK(*r.oracle_cost <= r.cost);
    }
}

TEST_CASE("ExperimentError carries the failing run") {
    const ExperimentError e(Algorithm::Imga, 42, 7, "boom");
    CHECK(e.algorithm() == Algorithm::Imga);
    CHECK(e.seed() == 42);
    CHECK(e.d() == 7);
    CHECK(std::string(e.what()).find("imga") != std::string::npos);
}

TEST_CASE("aggregate keeps the exact worst ratio") {
    const std::vector<RatioRecord> records{
        {Algorithm::Mga, 0, 1, 10, 7}, {Algorithm::Mga, 1, 1, 3, 2}, {Algorithm::Mga, 2, 1, 13, 9}};
    const std::vector<Algorithm> algs{Algorithm::Mga};
    const auto agg = aggregate(records, algs);
    REQUIRE(agg.size() == 1);
    CHECK(agg[0].max_cost == 3);
    CHECK(agg[0].max_lower_bound == 2);
    CHECK(agg[0].mean_ratio == doctest::Approx((10.0 / 7 + 1.5 + 13.0 / 9) / 3));
}

TEST_CASE("adversarial family structure") {
    const auto inst = adversarial_family(3, 100, 1);
    CHECK(inst.senders() == 5);
    CHECK(inst.receivers() == 5);
    const auto stats = compute_stats(inst);
    CHECK(stats.delta == 3);
    CHECK(stats.workload == 102);

    const auto minimal = adversarial_family(2, 5, 1, 4);
    CHECK(minimal.rows() == std::vector<std::vector<Weight>>{{5, 0, 1}, {0, 5, 1}, {1, 1, 0}});
    CHECK(minimal.setup_delay() == 4);

    CHECK_THROWS_AS(adversarial_family(1, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(adversarial_family(3, 1, 1), std::invalid_argument);
}

TEST_CASE("adversarial family isolates heavy edges") {
    // No matching holds two heavy edges together with all u rows, so GWA pays
    // a heavy frame per heavy edge.
    for (std::size_t delta : {2u, 3u, 5u}) {
        const auto inst = adversarial_family(delta, 50, 1, 0);
        const auto g = gwa(inst);
        std::size_t heavy_frames = 0;
        for (const auto& f : g.schedule.frames) {
            heavy_frames += frame_duration(f) == 50 ? 1 : 0;
        }
        CHECK(heavy_frames == delta);
        CHECK(g.cost == 50 * static_cast<Weight>(delta));
    }
}

TEST_CASE("format_ratio rounds half up from exact integers") {
    CHECK(format_ratio(1, 1) == "1.000000");
    CHECK(format_ratio(44, 42) == "1.047619");
    CHECK(format_ratio(2, 3) == "0.666667");
    CHECK(format_ratio(1, 8) == "0.125000");
    CHECK(format_ratio(1, 2000000) == "0.000001");
    CHECK(format_ratio(1, 2000001) == "0.000000");
    CHECK(format_ratio(3551, 2000) == "1.775500");
}

TEST_CASE("CSV output") {
    const std::vector<RatioRecord> records{{Algorithm::Gwa, 3, 10, 44, 42}};
    CHECK(records_csv(records) == "algorithm,instance,d,cost,lower_bound,ratio\ngwa,3,10,44,42,1.047619\n");
    const std::vector<AggregateRecord> aggs{{Algorithm::Apbs, 5, 1.25, 3, 2}};
    CHECK(aggregates_csv(aggs) == "algorithm,d,mean_ratio,max_ratio\napbs,5,1.250000,1.500000\n");
}
