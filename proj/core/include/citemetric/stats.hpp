#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "citemetric/indicators.hpp"

namespace citemetric {

enum class Indicator { crown, mncs };

const char* to_string(Indicator ind);

// One-sample z comparing mean observed citations against the mean
// expectation, with the expectation treated as a constant:
//
//   z = (mean_c - mean_e) / SE,  SE = sd(c) / sqrt(n)
//
// where sd is the Bessel-corrected sample standard deviation of the
// observed counts. z is absent when SE is zero while the means differ
// (degenerate sample, no finite statistic exists).
struct SignificanceResult {
    std::optional<double> z;
    double mean_observed = 0.0;
    double mean_expected = 0.0;
    double standard_error = 0.0;
};

// Needs at least two included publications (TooFewPublications otherwise).
SignificanceResult schubert_glanzel_z(const OeuvreScore& score);

struct BootstrapResult {
    Indicator indicator = Indicator::crown;
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int n_resamples = 0;
    std::uint64_t seed = 0;
};

// Percentile bootstrap over the scored publications. Fully deterministic
// for a fixed seed; the exact scheme is part of the contract so that an
// independent resampler can reproduce results bit for bit:
//
//   1. rng = std::mt19937_64(seed)
//   2. for b in 0..n_resamples-1, draw n indices in order as rng() % n
//   3. per resample: crown = sum(c)/sum(e), mncs = mean of ratios,
//      accumulated in draw order
//   4. sort the statistics; the interval is the linearly interpolated
//      empirical quantile q(p) with h=(B-1)p, i=floor(h),
//      q = s[i] + (h-i)(s[i+1]-s[i]), at p = (1-level)/2 and 1-(1-level)/2
//
// Preconditions: at least one scored publication, n_resamples >= 1,
// level in (0,1).
BootstrapResult bootstrap_ci(const std::vector<ScoredPublication>& scored, Indicator indicator,
                             int n_resamples, double level, std::uint64_t seed);

// Substream seed for one researcher under a master seed, so per-oeuvre
// resampling is independent of scheduling order:
//   h = fnv1a64(researcher_id); h ^= master_seed; h *= 0x100000001b3
std::uint64_t derive_seed(std::uint64_t master_seed, const std::string& researcher_id);

// Linearly interpolated empirical quantile of a sorted sample (scheme
// above). Exposed for the report layer and reference checks.
double sorted_quantile(const std::vector<double>& sorted_values, double p);

}  // namespace citemetric
