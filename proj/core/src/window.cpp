#include "citemetric/window.hpp"

#include <algorithm>
#include <fstream>

#include "citemetric/baseline.hpp"
#include "citemetric/csv.hpp"
#include "citemetric/errors.hpp"

namespace citemetric {

std::vector<ComparisonRecord> compare_at_window(const Corpus& corpus, WindowSpec window,
                                                const ScoringConfig& config, int threads) {
    ScoringConfig window_config = config;
    window_config.window_end = window.end_year;
    const BaselineTable table = build_baselines(corpus, config.baseline_mode, window);
    const CohortResult cohort = score_cohort(corpus, table, window_config, threads);

    std::vector<ComparisonRecord> records;
    records.reserve(cohort.scores.size());
    for (const auto& score : cohort.scores) {
        if (score.n_included == 0) continue;  // no defined point for this researcher
        ComparisonRecord rec;
        rec.researcher_id = score.researcher_id;
        rec.window_end = window.end_year;
        rec.crown = score.crown;
        rec.mncs = score.mncs;
        rec.divergence = divergence(score);
        rec.n_included = score.n_included;
        for (const auto& sp : score.scored) {
            const Publication* pub = corpus.find(sp.pub_id);
            if (pub && pub->pub_year >= window.end_year - 1) ++rec.n_recent;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

SweepResult window_sweep(const Corpus& corpus, const std::vector<WindowSpec>& windows,
                         double delta, const ScoringConfig& config, int threads) {
    if (windows.empty()) {
        throw Error("window sweep needs at least one window");
    }
    for (std::size_t i = 1; i < windows.size(); ++i) {
        if (windows[i].end_year <= windows[i - 1].end_year) {
            throw Error("window end years must be strictly increasing");
        }
    }

    SweepResult result;
    for (const auto& window : windows) {
        auto records = compare_at_window(corpus, window, config, threads);

        SweepSummary summary;
        summary.window_end = window.end_year;
        summary.n_researchers = records.size();
        summary.delta = delta;
        std::vector<double> divergences;
        divergences.reserve(records.size());
        for (const auto& rec : records) {
            if (rec.divergence > delta) ++summary.n_above_diagonal;
            divergences.push_back(rec.divergence);
        }
        if (!divergences.empty()) {
            std::sort(divergences.begin(), divergences.end());
            summary.max_divergence = divergences.back();
            const std::size_t n = divergences.size();
            summary.median_divergence =
                (n % 2 == 1) ? divergences[n / 2]
                             : 0.5 * (divergences[n / 2 - 1] + divergences[n / 2]);
        }
        result.summaries.push_back(summary);
        result.per_window.push_back(std::move(records));
    }
    return result;
}

std::vector<std::pair<std::string, double>> attribute_divergence(const OeuvreScore& score) {
    if (score.n_included < 1) {
        throw Error("divergence attribution needs at least one scored publication");
    }
    const double inv_n = 1.0 / static_cast<double>(score.n_included);
    std::vector<std::pair<std::string, double>> contributions;
    contributions.reserve(score.scored.size());
    for (const auto& sp : score.scored) {
        const double weight_gap = inv_n - sp.expected / score.sum_expected;
        contributions.emplace_back(sp.pub_id, weight_gap * sp.ratio);
    }
    std::sort(contributions.begin(), contributions.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return contributions;
}

void write_compare_csv(const std::vector<ComparisonRecord>& records,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path.string(), "cannot open for writing");
    out << "researcher_id,window_end,n_included,n_recent,crown,mncs,divergence\n";
    for (const auto& rec : records) {
        out << csv::join({rec.researcher_id, std::to_string(rec.window_end),
                          std::to_string(rec.n_included), std::to_string(rec.n_recent),
                          csv::format_real(rec.crown), csv::format_real(rec.mncs),
                          csv::format_real(rec.divergence)})
            << '\n';
    }
    if (!out) throw IoFailure(path.string(), "write error");
}

void write_sweep_csv(const std::vector<SweepSummary>& summaries,
                     const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path.string(), "cannot open for writing");
    out << "window_end,n_researchers,n_above_diagonal,delta,max_divergence,median_divergence\n";
    for (const auto& s : summaries) {
        out << csv::join({std::to_string(s.window_end), std::to_string(s.n_researchers),
                          std::to_string(s.n_above_diagonal), csv::format_real(s.delta),
                          csv::format_real(s.max_divergence),
                          csv::format_real(s.median_divergence)})
            << '\n';
    }
    if (!out) throw IoFailure(path.string(), "write error");
}

}  // namespace citemetric
