#include <doctest.h>

#include <cmath>
#include <random>

#include "citemetric/errors.hpp"
#include "citemetric/stats.hpp"
#include "support/oracles.hpp"

using namespace citemetric;

namespace {

OeuvreScore score_of(const std::vector<std::int64_t>& c, const std::vector<double>& e) {
    std::vector<CitationPair> pairs;
    for (std::size_t i = 0; i < c.size(); ++i) {
        pairs.push_back({"p" + std::to_string(i), c[i], e[i]});
    }
    ScoringConfig config;
    config.window_end = 2006;
    return score_pairs("r", pairs, config);
}

std::vector<oracle::Pair> to_oracle(const OeuvreScore& score) {
    std::vector<oracle::Pair> pairs;
    for (const auto& sp : score.scored) pairs.push_back({sp.observed, sp.expected});
    return pairs;
}

}  // namespace

TEST_CASE("z is zero for a zero-variance sample matching its expectation") {
    const auto result = schubert_glanzel_z(score_of({2, 2, 2, 2}, {2.0, 2.0, 2.0, 2.0}));
    CHECK(result.standard_error == 0.0);
    REQUIRE(result.z.has_value());
    CHECK(*result.z == 0.0);
}

TEST_CASE("z from the worked two-publication sample") {
    const auto result = schubert_glanzel_z(score_of({0, 4}, {2.0, 2.0}));
    CHECK(result.mean_observed == 2.0);
    CHECK(result.mean_expected == 2.0);
    CHECK(result.standard_error == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(result.z.has_value());
    CHECK(*result.z == 0.0);
}

TEST_CASE("degenerate variance with differing means reports missing z") {
    const auto result = schubert_glanzel_z(score_of({4, 4}, {2.0, 2.0}));
    CHECK(result.standard_error == 0.0);
    CHECK(result.mean_observed == 4.0);
    CHECK(result.mean_expected == 2.0);
    CHECK(!result.z.has_value());
}

TEST_CASE("z requires at least two included publications") {
    CHECK_THROWS_AS(schubert_glanzel_z(score_of({4}, {2.0})), TooFewPublications);
}

TEST_CASE("z sign matches crown - 1 under constant expectations") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 8;
        std::vector<std::int64_t> c;
        std::vector<double> e;
        for (std::size_t i = 0; i < n; ++i) {
            c.push_back(static_cast<std::int64_t>(rng() % 10));
            e.push_back(3.0);
        }
        const auto score = score_of(c, e);
        const auto result = schubert_glanzel_z(score);
        if (!result.z.has_value() || *result.z == 0.0) continue;
        CHECK((score.crown > 1.0) == (*result.z > 0.0));
    }
}

TEST_CASE("bootstrap is deterministic for a fixed seed") {
    const auto score = score_of({8, 1, 3, 0, 5}, {1.0, 4.0, 2.0, 0.5, 3.0});
    const auto a = bootstrap_ci(score.scored, Indicator::crown, 500, 0.95, 42);
    const auto b = bootstrap_ci(score.scored, Indicator::crown, 500, 0.95, 42);
    CHECK(a.ci_low == b.ci_low);
    CHECK(a.ci_high == b.ci_high);
    CHECK(a.point == b.point);

    const auto other_seed = bootstrap_ci(score.scored, Indicator::crown, 500, 0.95, 43);
    CHECK((other_seed.ci_low != a.ci_low || other_seed.ci_high != a.ci_high));
}

TEST_CASE("identical publications give a zero-width interval at the point") {
    const auto score = score_of({3, 3, 3}, {1.5, 1.5, 1.5});
    for (const auto indicator : {Indicator::crown, Indicator::mncs}) {
        const auto result = bootstrap_ci(score.scored, indicator, 1000, 0.95, 7);
        CHECK(result.ci_low == result.point);
        CHECK(result.ci_high == result.point);
    }
}

TEST_CASE("a singleton sample gives a zero-width interval") {
    const auto score = score_of({4}, {2.0});
    const auto result = bootstrap_ci(score.scored, Indicator::mncs, 200, 0.95, 7);
    CHECK(result.ci_low == 2.0);
    CHECK(result.ci_high == 2.0);
    CHECK(result.point == 2.0);
}

TEST_CASE("bootstrap matches the independent reference resampler exactly") {
    const auto score = score_of({8, 1}, {1.0, 4.0});
    const auto pairs = to_oracle(score);
    for (const bool crown_stat : {true, false}) {
        const auto indicator = crown_stat ? Indicator::crown : Indicator::mncs;
        const auto mine = bootstrap_ci(score.scored, indicator, 10000, 0.95, 20100331);
        const auto reference = oracle::reference_bootstrap(pairs, crown_stat, 10000, 0.95, 20100331);
        CHECK(mine.ci_low == reference.low);    // bitwise
        CHECK(mine.ci_high == reference.high);  // bitwise
    }
}

TEST_CASE("interval contains the point estimate and widens with the level") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 10;
        std::vector<std::int64_t> c;
        std::vector<double> e;
        for (std::size_t i = 0; i < n; ++i) {
            c.push_back(static_cast<std::int64_t>(rng() % 20));
            e.push_back(0.5 + static_cast<double>(rng() % 40) / 10.0);
        }
        const auto score = score_of(c, e);
        const auto narrow = bootstrap_ci(score.scored, Indicator::mncs, 1000, 0.80, trial);
        const auto wide = bootstrap_ci(score.scored, Indicator::mncs, 1000, 0.99, trial);
        CHECK(narrow.ci_low <= narrow.point);
        CHECK(narrow.point <= narrow.ci_high);
        CHECK(wide.ci_low <= narrow.ci_low);
        CHECK(wide.ci_high >= narrow.ci_high);
    }
}

TEST_CASE("derived substream seeds differ across researchers") {
    CHECK(derive_seed(42, "r0001") != derive_seed(42, "r0002"));
    CHECK(derive_seed(42, "r0001") != derive_seed(43, "r0001"));
    CHECK(derive_seed(42, "r0001") == derive_seed(42, "r0001"));
}

TEST_CASE("bootstrap rejects bad arguments") {
    const auto score = score_of({4, 2}, {2.0, 2.0});
    CHECK_THROWS_AS(bootstrap_ci({}, Indicator::crown, 100, 0.95, 1), Error);
    CHECK_THROWS_AS(bootstrap_ci(score.scored, Indicator::crown, 0, 0.95, 1), Error);
    CHECK_THROWS_AS(bootstrap_ci(score.scored, Indicator::crown, 100, 1.0, 1), Error);
}
