#include "citemetric/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "citemetric/errors.hpp"
#include "citemetric/fingerprint.hpp"

namespace citemetric {

const char* to_string(Indicator ind) {
    return ind == Indicator::crown ? "crown" : "mncs";
}

SignificanceResult schubert_glanzel_z(const OeuvreScore& score) {
    const std::size_t n = score.n_included;
    if (n < 2) {
        throw TooFewPublications(n, 2);
    }
    SignificanceResult result;
    result.mean_observed = static_cast<double>(score.sum_observed) / static_cast<double>(n);
    result.mean_expected = score.sum_expected / static_cast<double>(n);

    double ss = 0.0;
    for (const auto& sp : score.scored) {
        const double d = static_cast<double>(sp.observed) - result.mean_observed;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    result.standard_error = sd / std::sqrt(static_cast<double>(n));

    const double diff = result.mean_observed - result.mean_expected;
    if (result.standard_error == 0.0) {
        if (diff == 0.0) result.z = 0.0;
        // else: undefined, reported as missing
    } else {
        result.z = diff / result.standard_error;
    }
    return result;
}

BootstrapResult bootstrap_ci(const std::vector<ScoredPublication>& scored, Indicator indicator,
                             int n_resamples, double level, std::uint64_t seed) {
    const std::size_t n = scored.size();
    if (n < 1) throw Error("bootstrap needs at least one scored publication");
    if (n_resamples < 1) throw Error("bootstrap needs at least one resample");
    if (!(level > 0.0 && level < 1.0)) throw Error("bootstrap level must be in (0, 1)");

    auto statistic = [&](const std::vector<std::size_t>& idx) {
        if (indicator == Indicator::crown) {
            std::int64_t c = 0;
            double e = 0.0;
            for (std::size_t j : idx) {
                c += scored[j].observed;
                e += scored[j].expected;
            }
            return static_cast<double>(c) / e;
        }
        double r = 0.0;
        for (std::size_t j : idx) r += scored[j].ratio;
        return r / static_cast<double>(n);
    };

    std::vector<std::size_t> identity(n);
    for (std::size_t j = 0; j < n; ++j) identity[j] = j;

    BootstrapResult result;
    result.indicator = indicator;
    result.point = statistic(identity);
    result.n_resamples = n_resamples;
    result.seed = seed;

    std::mt19937_64 rng(seed);
    std::vector<double> stats(static_cast<std::size_t>(n_resamples));
    std::vector<std::size_t> idx(n);
    for (int b = 0; b < n_resamples; ++b) {
        for (std::size_t j = 0; j < n; ++j) {
            idx[j] = static_cast<std::size_t>(rng() % n);
        }
        stats[static_cast<std::size_t>(b)] = statistic(idx);
    }
    std::sort(stats.begin(), stats.end());

    const double alpha = 1.0 - level;
    result.ci_low = sorted_quantile(stats, alpha / 2.0);
    result.ci_high = sorted_quantile(stats, 1.0 - alpha / 2.0);
    return result;
}

double sorted_quantile(const std::vector<double>& sorted_values, double p) {
    if (sorted_values.empty()) throw Error("quantile of empty sample");
    const std::size_t n = sorted_values.size();
    if (n == 1) return sorted_values[0];
    const double h = static_cast<double>(n - 1) * p;
    const auto i = static_cast<std::size_t>(h);
    if (i + 1 >= n) return sorted_values[n - 1];
    const double frac = h - static_cast<double>(i);
    return sorted_values[i] + frac * (sorted_values[i + 1] - sorted_values[i]);
}

std::uint64_t derive_seed(std::uint64_t master_seed, const std::string& researcher_id) {
    std::uint64_t h = fnv1a64(researcher_id);
    h ^= master_seed;
    h *= 0x100000001b3ULL;
    return h;
}

}  // namespace citemetric
