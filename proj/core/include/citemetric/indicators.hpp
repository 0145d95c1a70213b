#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "citemetric/baseline.hpp"
#include "citemetric/config.hpp"
#include "citemetric/corpus.hpp"

namespace citemetric {

// Names for the per-publication exclusion reasons recorded in audits.
namespace exclusion {
inline constexpr const char* after_window = "after_window";
inline constexpr const char* missing_baseline = "missing_baseline";
inline constexpr const char* zero_expected = "zero_expected";
inline constexpr const char* below_expected_floor = "below_expected_floor";
}  // namespace exclusion

struct ScoredPublication {
    std::string pub_id;
    std::int64_t observed = 0;  // windowed citation count c_i
    double expected = 0.0;      // e_i, always > 0 for a scored publication
    double ratio = 0.0;         // c_i / e_i
    bool low_expected_flag = false;
    bool high_ratio_flag = false;
};

struct Exclusion {
    std::string pub_id;
    std::string reason;
};

// Per-researcher result of scoring one oeuvre under one window.
// ratio_of_averages == sum_observed / sum_expected   (the "crown" form)
// mean_of_ratios    == (1/n) * sum of per-publication ratios
struct OeuvreScore {
    std::string researcher_id;
    std::size_t n_total = 0;
    std::size_t n_included = 0;
    std::size_t n_excluded = 0;
    std::int64_t sum_observed = 0;
    double sum_expected = 0.0;
    double crown = 0.0;
    double mncs = 0.0;
    std::vector<ScoredPublication> scored;  // ascending pub_id
    std::vector<Exclusion> exclusions;      // ascending pub_id
};

// Raw material for the scoring kernel when observed/expected pairs come
// from somewhere other than a baseline table (tests, resampling).
struct CitationPair {
    std::string pub_id;
    std::int64_t observed = 0;
    double expected = 0.0;
};

// Scoring kernel: both indicators over already-resolved (c_i, e_i) pairs.
// Pairs with expected <= 0 are rejected (Error); empty input throws
// AllPublicationsExcluded. Flags follow config thresholds.
OeuvreScore score_pairs(const std::string& researcher_id, const std::vector<CitationPair>& pairs,
                        const ScoringConfig& config);

// Full per-oeuvre scoring: resolves e_i from the baseline table (with
// optional leave-one-out adjustment), excludes publications that cannot
// be scored (itemized, never silent), then applies the kernel.
// Preconditions: pubs non-empty, table window equal to `window`.
// Throws AllPublicationsExcluded when no publication survives; the
// exception carries the exclusion list.
OeuvreScore score_oeuvre(const std::string& researcher_id,
                         const std::vector<const Publication*>& pubs, const BaselineTable& table,
                         WindowSpec window, const ScoringConfig& config);

// The identity behind the ratio-of-averages form: it is the expected-
// citation-weighted mean of the per-publication ratios. Returns the
// weights w_i = e_i / sum(e) (summing to 1) and sum(w_i * ratio_i),
// which reconstructs `crown` to floating-point accuracy.
std::pair<std::vector<double>, double> crown_as_weighted_mean(const OeuvreScore& score);

// mncs - crown: signed vertical distance from the method-agreement
// diagonal. Positive means the mean-of-ratios form reads higher.
double divergence(const OeuvreScore& score);

// A researcher the cohort run could not score.
struct SkippedResearcher {
    std::string researcher_id;
    std::size_t n_total = 0;
    std::string reason;  // "below_min_pubs"
};

struct CohortResult {
    // One entry per researcher meeting min_pubs, ascending researcher_id.
    // Researchers whose publications were all excluded appear with
    // n_included == 0 and undefined (NaN) indicator values.
    std::vector<OeuvreScore> scores;
    std::vector<SkippedResearcher> skipped;  // below the min_pubs filter
};

// Scores every researcher in the corpus against one baseline table.
// min_pubs filters on publications held (n_total), so exclusions stay
// visible instead of silently shrinking the cohort. Deterministic for
// any thread count.
CohortResult score_cohort(const Corpus& corpus, const BaselineTable& table,
                          const ScoringConfig& config, int threads = 1);

}  // namespace citemetric
