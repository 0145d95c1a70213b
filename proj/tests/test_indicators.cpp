#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "citemetric/errors.hpp"
#include "citemetric/indicators.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace citemetric;
using testsupport::corpus_of;
using testsupport::make_pub;
using testsupport::simple_pub;

namespace {

ScoringConfig default_config() {
    ScoringConfig config;
    config.window_end = 2006;
    return config;
}

std::vector<CitationPair> pairs_of(const std::vector<std::int64_t>& c,
                                   const std::vector<double>& e) {
    std::vector<CitationPair> pairs;
    for (std::size_t i = 0; i < c.size(); ++i) {
        pairs.push_back({"p" + std::to_string(i), c[i], e[i]});
    }
    return pairs;
}

// Random oeuvre with e_i in (0.1, 20] and c_i in [0, 100].
std::vector<CitationPair> random_pairs(std::mt19937_64& rng, std::size_t max_n) {
    const std::size_t n = 1 + rng() % max_n;
    std::vector<CitationPair> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        pairs.push_back({"p" + std::to_string(i), static_cast<std::int64_t>(rng() % 101),
                         0.1 + u * 19.9 + 1e-9});
    }
    return pairs;
}

std::vector<oracle::Pair> to_oracle(const std::vector<CitationPair>& pairs) {
    std::vector<oracle::Pair> out;
    for (const auto& p : pairs) out.push_back({p.observed, p.expected});
    return out;
}

}  // namespace

TEST_CASE("the two averaging orders diverge on the worked pair") {
    const auto score = score_pairs("r", pairs_of({8, 1}, {1.0, 4.0}), default_config());
    CHECK(score.crown == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(score.mncs == doctest::Approx(4.125).epsilon(1e-12));
    CHECK(divergence(score) == doctest::Approx(2.325).epsilon(1e-12));
    CHECK(score.sum_observed == 9);
    CHECK(score.sum_expected == doctest::Approx(5.0));
}

TEST_CASE("a single publication forces the indicators to agree") {
    const auto score = score_pairs("r", pairs_of({4}, {2.0}), default_config());
    CHECK(score.crown == 2.0);
    CHECK(score.mncs == 2.0);
    CHECK(divergence(score) == 0.0);
}

TEST_CASE("equal expectations force the indicators to agree") {
    const auto score = score_pairs("r", pairs_of({2, 2, 2}, {2.0, 2.0, 2.0}), default_config());
    CHECK(std::fabs(score.crown - score.mncs) <= 1e-12);
    CHECK(score.crown == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("weighted-mean identity on the worked pair") {
    const auto score = score_pairs("r", pairs_of({8, 1}, {1.0, 4.0}), default_config());
    const auto [weights, reconstructed] = crown_as_weighted_mean(score);
    REQUIRE(weights.size() == 2);
    CHECK(weights[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(weights[1] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(reconstructed == doctest::Approx(1.8).epsilon(1e-12));
}

TEST_CASE("weighted-mean degeneracies") {
    SUBCASE("equal expectations give uniform weights and reconstruct mncs") {
        const auto score = score_pairs("r", pairs_of({5, 1, 3}, {2.0, 2.0, 2.0}), default_config());
        const auto [weights, reconstructed] = crown_as_weighted_mean(score);
        for (const double w : weights) CHECK(w == doctest::Approx(1.0 / 3).epsilon(1e-12));
        CHECK(reconstructed == doctest::Approx(score.mncs).epsilon(1e-12));
    }
    SUBCASE("single publication gets weight one") {
        const auto score = score_pairs("r", pairs_of({4}, {2.0}), default_config());
        const auto [weights, reconstructed] = crown_as_weighted_mean(score);
        REQUIRE(weights.size() == 1);
        CHECK(weights[0] == 1.0);
        CHECK(reconstructed == score.scored[0].ratio);
    }
}

TEST_CASE("divergence of the cohort-shaped 1.28 vs 0.78 pair") {
    OeuvreScore score;
    score.n_included = 1;
    score.mncs = 1.28;
    score.crown = 0.78;
    CHECK(divergence(score) == doctest::Approx(0.50).epsilon(1e-12));
}

TEST_CASE("score_oeuvre excludes what it cannot score, with reasons") {
    const Corpus corpus = corpus_of({
        simple_pub("a", "F", 2005, 1),
        simple_pub("b", "F", 2005, 3),
        make_pub("d", "j", {"F"}, 2007, DocType::article, {}),       // after window
        make_pub("e", "j", {"Z"}, 2005, DocType::article, {}),       // zero-mean cell
    });
    const BaselineTable table = build_baselines(corpus, BaselineMode::field, WindowSpec{2006});
    ScoringConfig config = default_config();
    config.expected_floor = 0.1;

    // Not part of the reference corpus; its field has no cell.
    const Publication orphan = make_pub("c", "j", {"H"}, 2005, DocType::article, {});

    const std::vector<const Publication*> pubs = {corpus.find("a"), corpus.find("b"), &orphan,
                                                  corpus.find("d"), corpus.find("e")};
    const auto score = score_oeuvre("r", pubs, table, WindowSpec{2006}, config);
    CHECK(score.n_total == 5);
    CHECK(score.n_included == 2);
    CHECK(score.n_excluded == 3);
    REQUIRE(score.exclusions.size() == 3);
    CHECK(score.exclusions[0].pub_id == "c");
    CHECK(score.exclusions[0].reason == exclusion::missing_baseline);
    CHECK(score.exclusions[1].pub_id == "d");
    CHECK(score.exclusions[1].reason == exclusion::after_window);
    CHECK(score.exclusions[2].pub_id == "e");
    CHECK(score.exclusions[2].reason == exclusion::zero_expected);
    CHECK(score.n_included + score.n_excluded == score.n_total);
}

TEST_CASE("expected_floor excludes publications below it") {
    std::vector<Publication> pubs;
    // 20 uncited publications and one cited one: cell mean 0.05.
    for (int i = 0; i < 19; ++i) pubs.push_back(simple_pub("u" + std::to_string(i), "F", 2005, 0));
    pubs.push_back(simple_pub("v", "F", 2005, 1));
    const Corpus corpus = corpus_of(std::move(pubs));
    const BaselineTable table = build_baselines(corpus, BaselineMode::field, WindowSpec{2006});

    ScoringConfig config = default_config();
    const std::vector<const Publication*> oeuvre = {corpus.find("v")};
    CHECK_THROWS_AS(score_oeuvre("r", oeuvre, table, WindowSpec{2006}, config),
                    AllPublicationsExcluded);
    try {
        score_oeuvre("r", oeuvre, table, WindowSpec{2006}, config);
    } catch (const AllPublicationsExcluded& e) {
        REQUIRE(e.exclusions().size() == 1);
        CHECK(e.exclusions()[0].second == exclusion::below_expected_floor);
    }

    config.expected_floor = 0.0;  // floor off: now scoreable
    const auto score = score_oeuvre("r", oeuvre, table, WindowSpec{2006}, config);
    CHECK(score.n_included == 1);
    CHECK(score.scored[0].low_expected_flag);   // 0.05 < 1.0
    CHECK(score.scored[0].high_ratio_flag);     // ratio 20 > 5
}

TEST_CASE("leave-one-out scoring uses adjusted expectations") {
    // Cell (F, 2005, article): members 1, 3, 5 -> mean 3. Excluding "a"
    // (1 citation) leaves mean 4; excluding "c" (5) leaves mean 2.
    const Corpus corpus = corpus_of({
        simple_pub("a", "F", 2005, 1),
        simple_pub("b", "F", 2005, 3),
        simple_pub("c", "F", 2005, 5),
    });
    const BaselineTable table = build_baselines(corpus, BaselineMode::field, WindowSpec{2006});
    ScoringConfig config = default_config();
    const std::vector<const Publication*> pubs = {corpus.find("a"), corpus.find("c")};

    const auto plain = score_oeuvre("r", pubs, table, WindowSpec{2006}, config);
    CHECK(plain.scored[0].expected == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(plain.scored[1].expected == doctest::Approx(3.0).epsilon(1e-12));

    config.leave_one_out = true;
    const auto adjusted = score_oeuvre("r", pubs, table, WindowSpec{2006}, config);
    CHECK(adjusted.scored[0].expected == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(adjusted.scored[1].expected == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(adjusted.crown == doctest::Approx(1.0).epsilon(1e-12));  // (1+5)/(4+2)
}

TEST_CASE("window mismatch between table and scoring is rejected") {
    const Corpus corpus = corpus_of({simple_pub("a", "F", 2005, 1)});
    const BaselineTable table = build_baselines(corpus, BaselineMode::field, WindowSpec{2006});
    const std::vector<const Publication*> pubs = {corpus.find("a")};
    CHECK_THROWS_AS(score_oeuvre("r", pubs, table, WindowSpec{2008}, default_config()), Error);
}

TEST_CASE("indicator properties over seeded random oeuvres") {
    std::mt19937_64 rng(12345);
    const ScoringConfig config = default_config();
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto pairs = random_pairs(rng, 50);
        const auto score = score_pairs("r", pairs, config);
        ++checked;

        // Weighted-mean identity reconstructs the ratio of averages.
        const auto [weights, reconstructed] = crown_as_weighted_mean(score);
        double weight_sum = 0.0;
        for (const double w : weights) weight_sum += w;
        CHECK(std::fabs(weight_sum - 1.0) <= 1e-12);
        CHECK(std::fabs(reconstructed - score.crown) <= 1e-12);

        // n = 1 forces equality.
        if (pairs.size() == 1) CHECK(score.crown == score.mncs);

        // Joint scaling of c and e leaves both indicators unchanged.
        for (const double k : {2.0, 10.0}) {
            std::vector<CitationPair> scaled = pairs;
            for (auto& p : scaled) {
                p.observed *= static_cast<std::int64_t>(k);
                p.expected *= k;
            }
            const auto scaled_score = score_pairs("r", scaled, config);
            CHECK(std::fabs(scaled_score.crown - score.crown) <= 1e-12);
            CHECK(std::fabs(scaled_score.mncs - score.mncs) <= 1e-12);
        }

        // Equal expectations force agreement.
        std::vector<CitationPair> flat = pairs;
        for (auto& p : flat) p.expected = 3.0;
        const auto flat_score = score_pairs("r", flat, config);
        CHECK(std::fabs(flat_score.crown - flat_score.mncs) <= 1e-12);

        // Incrementing one included count strictly increases both.
        std::vector<CitationPair> bumped = pairs;
        bumped[rng() % bumped.size()].observed += 1;
        const auto bumped_score = score_pairs("r", bumped, config);
        CHECK(bumped_score.crown > score.crown);
        CHECK(bumped_score.mncs > score.mncs);

        // Appending a publication whose ratio equals mncs keeps mncs.
        if (score.mncs > 0.0) {
            std::vector<CitationPair> appended = pairs;
            appended.push_back({"mean", 7, 7.0 / score.mncs});
            const auto appended_score = score_pairs("r", appended, config);
            CHECK(std::fabs(appended_score.mncs - score.mncs) <= 1e-12);
        }

        // mncs does not depend on publication order.
        std::vector<CitationPair> shuffled = pairs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto shuffled_score = score_pairs("r", shuffled, config);
        CHECK(std::fabs(shuffled_score.mncs - score.mncs) <= 1e-12);
    }
    CHECK(checked == 1000);
}

TEST_CASE("indicators match single-expression brute force on 1000 instances") {
    std::mt19937_64 rng(777);
    const ScoringConfig config = default_config();
    for (int trial = 0; trial < 1000; ++trial) {
        const auto pairs = random_pairs(rng, 8);
        const auto score = score_pairs("r", pairs, config);
        const auto reference = to_oracle(pairs);
        CHECK(std::fabs(score.crown - oracle::crown(reference)) <= 1e-12);
        CHECK(std::fabs(score.mncs - oracle::mncs(reference)) <= 1e-12);
        CHECK(std::fabs(divergence(score) - oracle::divergence(reference)) <= 1e-12);
    }
}

TEST_CASE("ratio times expected reproduces observed") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto pairs = random_pairs(rng, 20);
        const auto score = score_pairs("r", pairs, default_config());
        for (const auto& sp : score.scored) {
            if (sp.observed == 0) {
                CHECK(sp.ratio == 0.0);
            } else {
                CHECK(std::fabs(sp.ratio * sp.expected - static_cast<double>(sp.observed)) /
                          static_cast<double>(sp.observed) <=
                      1e-9);
            }
        }
    }
}

TEST_CASE("score_cohort applies min_pubs on publications held") {
    std::vector<Publication> pubs;
    std::map<std::string, std::set<std::string>> oeuvres;
    for (int i = 0; i < 25; ++i) {
        const std::string id = "p" + std::to_string(i);
        pubs.push_back(simple_pub(id, "F", 2005, i % 5));
        if (i < 19) oeuvres["small"].insert(id);
        oeuvres["big"].insert(id);
    }
    const Corpus corpus = corpus_of(std::move(pubs), std::move(oeuvres));
    const BaselineTable table = build_baselines(corpus, BaselineMode::field, WindowSpec{2006});
    ScoringConfig config = default_config();
    config.min_pubs = 20;

    const CohortResult cohort = score_cohort(corpus, table, config);
    REQUIRE(cohort.scores.size() == 1);
    CHECK(cohort.scores[0].researcher_id == "big");
    REQUIRE(cohort.skipped.size() == 1);
    CHECK(cohort.skipped[0].researcher_id == "small");
    CHECK(cohort.skipped[0].n_total == 19);
    CHECK(cohort.skipped[0].reason == "below_min_pubs");
}

TEST_CASE("score_cohort keeps all-excluded researchers visible") {
    std::vector<Publication> pubs = {simple_pub("a", "F", 2005, 0)};
    const Corpus corpus = corpus_of(std::move(pubs), {{"r", {"a"}}});
    const BaselineTable table = build_baselines(corpus, BaselineMode::field, WindowSpec{2006});
    ScoringConfig config = default_config();
    config.min_pubs = 1;
    config.expected_floor = 0.5;  // the only cell has mean 0, excluded anyway

    const CohortResult cohort = score_cohort(corpus, table, config);
    REQUIRE(cohort.scores.size() == 1);
    CHECK(cohort.scores[0].n_included == 0);
    CHECK(std::isnan(cohort.scores[0].crown));
    REQUIRE(cohort.scores[0].exclusions.size() == 1);
    CHECK(cohort.scores[0].exclusions[0].reason == exclusion::zero_expected);
}

TEST_CASE("score_cohort is independent of thread count") {
    std::mt19937_64 rng(99);
    std::vector<Publication> pubs;
    std::map<std::string, std::set<std::string>> oeuvres;
    for (int r = 0; r < 12; ++r) {
        for (int i = 0; i < 5; ++i) {
            const std::string id = "p" + std::to_string(r) + "_" + std::to_string(i);
            pubs.push_back(simple_pub(id, "F", 2004 + (i % 3), static_cast<std::int64_t>(rng() % 9)));
            oeuvres["r" + std::to_string(r)].insert(id);
        }
    }
    const Corpus corpus = corpus_of(std::move(pubs), std::move(oeuvres));
    const BaselineTable table = build_baselines(corpus, BaselineMode::field, WindowSpec{2006});
    ScoringConfig config = default_config();
    config.min_pubs = 1;

    const CohortResult one = score_cohort(corpus, table, config, 1);
    const CohortResult four = score_cohort(corpus, table, config, 4);
    REQUIRE(one.scores.size() == four.scores.size());
    for (std::size_t i = 0; i < one.scores.size(); ++i) {
        CHECK(one.scores[i].researcher_id == four.scores[i].researcher_id);
        CHECK(one.scores[i].crown == four.scores[i].crown);
        CHECK(one.scores[i].mncs == four.scores[i].mncs);
    }
}
