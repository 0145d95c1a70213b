#include "citemetric/indicators.hpp"

#include <cmath>
#include <limits>

#include "citemetric/errors.hpp"
#include "citemetric/parallel.hpp"

namespace citemetric {

namespace {

std::vector<std::pair<std::string, std::string>> to_pairs(const std::vector<Exclusion>& ex) {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(ex.size());
    for (const auto& e : ex) out.emplace_back(e.pub_id, e.reason);
    return out;
}

OeuvreScore finish_score(std::string researcher_id, std::vector<ScoredPublication> scored,
                         std::vector<Exclusion> exclusions, std::size_t n_total) {
    OeuvreScore score;
    score.researcher_id = std::move(researcher_id);
    score.n_total = n_total;
    score.n_included = scored.size();
    score.n_excluded = exclusions.size();
    score.scored = std::move(scored);
    score.exclusions = std::move(exclusions);

    double ratio_sum = 0.0;
    for (const auto& sp : score.scored) {
        score.sum_observed += sp.observed;
        score.sum_expected += sp.expected;
        ratio_sum += sp.ratio;
    }
    score.crown = static_cast<double>(score.sum_observed) / score.sum_expected;
    score.mncs = ratio_sum / static_cast<double>(score.n_included);
    return score;
}

}  // namespace

OeuvreScore score_pairs(const std::string& researcher_id, const std::vector<CitationPair>& pairs,
                        const ScoringConfig& config) {
    if (pairs.empty()) {
        throw AllPublicationsExcluded(researcher_id, {});
    }
    std::vector<ScoredPublication> scored;
    scored.reserve(pairs.size());
    for (const auto& p : pairs) {
        if (!(p.expected > 0.0)) {
            throw Error("pair '" + p.pub_id + "' has non-positive expected value");
        }
        ScoredPublication sp;
        sp.pub_id = p.pub_id;
        sp.observed = p.observed;
        sp.expected = p.expected;
        sp.ratio = static_cast<double>(p.observed) / p.expected;
        sp.low_expected_flag = p.expected < config.low_expected;
        sp.high_ratio_flag = sp.ratio > config.ratio_flag;
        scored.push_back(std::move(sp));
    }
    return finish_score(researcher_id, std::move(scored), {}, pairs.size());
}

OeuvreScore score_oeuvre(const std::string& researcher_id,
                         const std::vector<const Publication*>& pubs, const BaselineTable& table,
                         WindowSpec window, const ScoringConfig& config) {
    if (pubs.empty()) {
        throw AllPublicationsExcluded(researcher_id, {});
    }
    if (table.window() != window) {
        throw Error("baseline table window " + std::to_string(table.window().end_year) +
                    " does not match scoring window " + std::to_string(window.end_year));
    }

    std::vector<CitationPair> pairs;
    std::vector<Exclusion> exclusions;
    std::vector<ScoredPublication> scored;
    pairs.reserve(pubs.size());

    for (const Publication* pub : pubs) {
        if (pub->pub_year > window.end_year) {
            exclusions.push_back({pub->pub_id, exclusion::after_window});
            continue;
        }
        const auto expected = config.leave_one_out ? leave_one_out_adjust(*pub, table)
                                                   : expected_citations(*pub, table);
        if (!expected) {
            exclusions.push_back({pub->pub_id, exclusion::missing_baseline});
            continue;
        }
        if (*expected <= 0.0) {
            exclusions.push_back({pub->pub_id, exclusion::zero_expected});
            continue;
        }
        if (*expected < config.expected_floor) {
            exclusions.push_back({pub->pub_id, exclusion::below_expected_floor});
            continue;
        }
        ScoredPublication sp;
        sp.pub_id = pub->pub_id;
        sp.observed = citations_up_to(*pub, window);
        sp.expected = *expected;
        sp.ratio = static_cast<double>(sp.observed) / sp.expected;
        sp.low_expected_flag = sp.expected < config.low_expected;
        sp.high_ratio_flag = sp.ratio > config.ratio_flag;
        scored.push_back(std::move(sp));
    }

    if (scored.empty()) {
        throw AllPublicationsExcluded(researcher_id, to_pairs(exclusions));
    }
    return finish_score(researcher_id, std::move(scored), std::move(exclusions), pubs.size());
}

std::pair<std::vector<double>, double> crown_as_weighted_mean(const OeuvreScore& score) {
    if (score.n_included < 1) {
        throw Error("weighted-mean decomposition needs at least one scored publication");
    }
    std::vector<double> weights;
    weights.reserve(score.scored.size());
    double reconstructed = 0.0;
    for (const auto& sp : score.scored) {
        const double w = sp.expected / score.sum_expected;
        weights.push_back(w);
        reconstructed += w * sp.ratio;
    }
    return {std::move(weights), reconstructed};
}

double divergence(const OeuvreScore& score) {
    if (score.n_included < 1) {
        throw Error("divergence needs at least one scored publication");
    }
    return score.mncs - score.crown;
}

CohortResult score_cohort(const Corpus& corpus, const BaselineTable& table,
                          const ScoringConfig& config, int threads) {
    std::vector<std::string> researcher_ids;
    researcher_ids.reserve(corpus.researcher_oeuvres().size());
    for (const auto& [researcher_id, pubs] : corpus.researcher_oeuvres()) {
        researcher_ids.push_back(researcher_id);
    }

    std::vector<std::optional<OeuvreScore>> slots(researcher_ids.size());
    std::vector<std::optional<SkippedResearcher>> skipped_slots(researcher_ids.size());

    parallel_for(researcher_ids.size(), threads, [&](std::size_t i) {
        const std::string& researcher_id = researcher_ids[i];
        const auto pubs = corpus.oeuvre(researcher_id);
        if (pubs.size() < static_cast<std::size_t>(config.min_pubs)) {
            skipped_slots[i] = SkippedResearcher{researcher_id, pubs.size(), "below_min_pubs"};
            return;
        }
        try {
            slots[i] = score_oeuvre(researcher_id, pubs, table, table.window(), config);
        } catch (const AllPublicationsExcluded& e) {
            // Keep the researcher visible: an empty score with itemized
            // exclusions and NaN indicators.
            OeuvreScore empty;
            empty.researcher_id = researcher_id;
            empty.n_total = pubs.size();
            empty.n_excluded = e.exclusions().size();
            empty.sum_expected = 0.0;
            empty.crown = std::numeric_limits<double>::quiet_NaN();
            empty.mncs = std::numeric_limits<double>::quiet_NaN();
            for (const auto& [pub_id, reason] : e.exclusions()) {
                empty.exclusions.push_back({pub_id, reason});
            }
            slots[i] = std::move(empty);
        }
    });

    CohortResult result;
    for (auto& slot : slots) {
        if (slot) result.scores.push_back(std::move(*slot));
    }
    for (auto& slot : skipped_slots) {
        if (slot) result.skipped.push_back(std::move(*slot));
    }
    return result;
}

}  // namespace citemetric
