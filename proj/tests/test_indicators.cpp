#include "catch2/catch_amalgamated.hpp"

#include <algorithm>
#include <random>

#include "hcore/indicators.hpp"
#include "oracles.hpp"

using hcore::ScientistProfile;

TEST_CASE("compute_h on known profiles") {
    CHECK(hcore::compute_h(ScientistProfile("a", {})) == 0);
    CHECK(hcore::compute_h(ScientistProfile("a", {3, 3, 3})) == 3);
    CHECK(hcore::compute_h(ScientistProfile("a", {10, 8, 5, 4, 3})) ==
          oracle::reference_h({10, 8, 5, 4, 3}));
    CHECK(hcore::compute_h(ScientistProfile("a", {10, 8, 5, 4, 3})) == 4);
    CHECK(hcore::compute_h(ScientistProfile("a", {0, 0})) == 0);
    CHECK(hcore::compute_h(ScientistProfile("a", {100})) == 1);
}

TEST_CASE("compute_h matches the definitional scan on random profiles") {
    std::mt19937 rng(7101);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto counts = oracle::random_citations(rng, 50, 100);
        ScientistProfile p("r", counts);
        CAPTURE(trial);
        REQUIRE(hcore::compute_h(p) == oracle::reference_h(counts));
    }
}

TEST_CASE("hirsch_core returns the first h entries") {
    const auto core = hcore::hirsch_core(ScientistProfile("a", {10, 8, 5, 4, 3}));
    CHECK(core == std::vector<long long>{10, 8, 5, 4});
    CHECK(hcore::hirsch_core(ScientistProfile("a", {})).empty());
    CHECK(hcore::hirsch_core(ScientistProfile("a", {1})) == std::vector<long long>{1});
}

TEST_CASE("area shares of the worked profile") {
    const auto ind = hcore::compute_areas(ScientistProfile("a", {10, 8, 5, 4, 3}));
    CHECK(ind.h == 4);
    CHECK(ind.total_citations == 30);
    CHECK_THAT(ind.h2_upper_pct, Catch::Matchers::WithinAbs(100.0 * 11 / 30, 1e-12));
    CHECK_THAT(ind.h2_pct, Catch::Matchers::WithinAbs(100.0 * 16 / 30, 1e-12));
    CHECK_THAT(ind.h2_lower_pct, Catch::Matchers::WithinAbs(10.0, 1e-12));

    const auto ref = oracle::unit_partition_shares({10, 8, 5, 4, 3}, 4);
    CHECK_THAT(ind.h2_lower_pct, Catch::Matchers::WithinAbs(ref.lower_pct, 1e-9));
    CHECK_THAT(ind.h2_pct, Catch::Matchers::WithinAbs(ref.square_pct, 1e-9));
    CHECK_THAT(ind.h2_upper_pct, Catch::Matchers::WithinAbs(ref.upper_pct, 1e-9));
}

TEST_CASE("rectangle profile is all square") {
    const auto ind = hcore::compute_areas(ScientistProfile("a", {3, 3, 3}));
    CHECK(ind.h2_pct == 100.0);
    CHECK(ind.h2_upper_pct == 0.0);
    CHECK(ind.h2_lower_pct == 0.0);
}

TEST_CASE("zero-citation profile has no defined shares") {
    CHECK_THROWS_AS(hcore::compute_areas(ScientistProfile("a", {0, 0, 0})),
                    hcore::ZeroCitations);
}

TEST_CASE("shares sum to 100 and match the unit-partition oracle") {
    std::mt19937 rng(2209);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        auto counts = oracle::random_citations(rng, 40, 60);
        ScientistProfile p("r", counts);
        if (p.total_citations() == 0) continue;
        ++checked;
        const auto ind = hcore::compute_areas(p);
        CAPTURE(trial);
        REQUIRE_THAT(ind.h2_lower_pct + ind.h2_pct + ind.h2_upper_pct,
                     Catch::Matchers::WithinAbs(100.0, 1e-9));
        REQUIRE(ind.h2_lower_pct >= 0.0);
        REQUIRE(ind.h2_pct >= 0.0);
        REQUIRE(ind.h2_upper_pct >= 0.0);
        REQUIRE(ind.h2_pct <= 100.0);

        std::sort(counts.begin(), counts.end(), std::greater<>());
        const auto ref = oracle::unit_partition_shares(counts, ind.h);
        REQUIRE_THAT(ind.h2_lower_pct, Catch::Matchers::WithinAbs(ref.lower_pct, 1e-9));
        REQUIRE_THAT(ind.h2_pct, Catch::Matchers::WithinAbs(ref.square_pct, 1e-9));
        REQUIRE_THAT(ind.h2_upper_pct, Catch::Matchers::WithinAbs(ref.upper_pct, 1e-9));
    }
    CHECK(checked > 1500);
}

TEST_CASE("indicators are permutation invariant") {
    std::mt19937 rng(515);
    for (int trial = 0; trial < 200; ++trial) {
        auto counts = oracle::random_citations(rng, 30, 50);
        if (counts.empty()) counts.push_back(5);
        counts.push_back(1);  // ensure a nonzero total
        auto shuffled = counts;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto a = hcore::compute_areas(ScientistProfile("x", counts));
        const auto b = hcore::compute_areas(ScientistProfile("x", shuffled));
        REQUIRE(a.h == b.h);
        REQUIRE(a.h2_lower_pct == b.h2_lower_pct);
        REQUIRE(a.h2_pct == b.h2_pct);
        REQUIRE(a.h2_upper_pct == b.h2_upper_pct);
    }
}

TEST_CASE("appending zero-citation papers changes nothing") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        auto counts = oracle::random_citations(rng, 30, 50);
        counts.push_back(3);
        auto padded = counts;
        padded.insert(padded.end(), 5, 0);
        const auto a = hcore::compute_areas(ScientistProfile("x", counts));
        const auto b = hcore::compute_areas(ScientistProfile("x", padded));
        REQUIRE(a.h == b.h);
        REQUIRE(a.h2_lower_pct == b.h2_lower_pct);
        REQUIRE(a.h2_pct == b.h2_pct);
        REQUIRE(a.h2_upper_pct == b.h2_upper_pct);
    }
}

TEST_CASE("classification of the three reference shapes") {
    hcore::IndicatorSet ind;
    ind.h2_upper_pct = 82.0;
    ind.h2_lower_pct = 3.0;
    CHECK(hcore::classify(ind) == hcore::PerformanceType::Perfectionist);

    ind.h2_upper_pct = 10.0;
    ind.h2_lower_pct = 57.0;
    CHECK(hcore::classify(ind) == hcore::PerformanceType::MassProducer);

    ind.h2_upper_pct = 50.0;
    ind.h2_lower_pct = 20.0;
    CHECK(hcore::classify(ind) == hcore::PerformanceType::Prolific);
}

TEST_CASE("classification rejects inconsistent thresholds") {
    hcore::IndicatorSet ind;
    hcore::ClassificationConfig cfg;
    cfg.upper_threshold = 120.0;
    CHECK_THROWS_AS(hcore::classify(ind, cfg), hcore::InvalidThresholds);
    cfg = {};
    cfg.lower_cap = 50.0;
    cfg.lower_threshold = 40.0;
    CHECK_THROWS_AS(hcore::classify(ind, cfg), hcore::InvalidThresholds);
}

TEST_CASE("negative citation counts are rejected at construction") {
    CHECK_THROWS_AS(ScientistProfile("a", {3, -1}), hcore::NegativeCitations);
}
