#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "citemetric/config.hpp"
#include "citemetric/corpus.hpp"
#include "citemetric/indicators.hpp"

namespace citemetric {

// One scatter point: a researcher's two indicator values at one census
// window. n_recent counts included publications from the census year or
// the year before (diagnostic only).
struct ComparisonRecord {
    std::string researcher_id;
    int window_end = 0;
    double crown = 0.0;
    double mncs = 0.0;
    double divergence = 0.0;
    std::size_t n_included = 0;
    std::size_t n_recent = 0;
};

struct SweepSummary {
    int window_end = 0;
    std::size_t n_researchers = 0;
    std::size_t n_above_diagonal = 0;  // divergence > delta
    double delta = 0.0;
    double max_divergence = 0.0;     // 0 when no researchers qualify
    double median_divergence = 0.0;  // even cohort: mean of the middle two
};

// Rebuilds baselines for the window and scores every researcher holding
// at least config.min_pubs publications. Researchers whose publications
// were all excluded produce no scatter point. Records are ascending by
// researcher_id.
std::vector<ComparisonRecord> compare_at_window(const Corpus& corpus, WindowSpec window,
                                                const ScoringConfig& config, int threads = 1);

struct SweepResult {
    std::vector<SweepSummary> summaries;                     // one per window, ascending
    std::vector<std::vector<ComparisonRecord>> per_window;   // scatter data per window
};

// Runs compare_at_window across strictly increasing window end years and
// summarizes how divergence outliers respond to window extension.
SweepResult window_sweep(const Corpus& corpus, const std::vector<WindowSpec>& windows,
                         double delta, const ScoringConfig& config, int threads = 1);

// Per-publication share of (mncs - crown): contribution_i =
// (1/n - e_i/sum_e) * ratio_i. Contributions sum to the divergence;
// returned sorted descending (ties broken by pub_id).
std::vector<std::pair<std::string, double>> attribute_divergence(const OeuvreScore& score);

// compare_<year>.csv: researcher_id,window_end,n_included,n_recent,crown,mncs,divergence
void write_compare_csv(const std::vector<ComparisonRecord>& records,
                       const std::filesystem::path& path);

// sweep.csv: window_end,n_researchers,n_above_diagonal,delta,max_divergence,median_divergence
void write_sweep_csv(const std::vector<SweepSummary>& summaries,
                     const std::filesystem::path& path);

}  // namespace citemetric
