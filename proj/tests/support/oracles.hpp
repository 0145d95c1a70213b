// Independent reference implementations used to check the library.
// Everything here recomputes results from scratch along a different code
// path than the implementation under test and must stay that way.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "citemetric/corpus.hpp"

namespace oracle {

struct Pair {
    std::int64_t c = 0;
    double e = 0.0;
};

inline double crown(const std::vector<Pair>& pairs) {
    double sc = 0.0, se = 0.0;
    for (const auto& p : pairs) {
        sc += static_cast<double>(p.c);
        se += p.e;
    }
    return sc / se;
}

inline double mncs(const std::vector<Pair>& pairs) {
    double sum = 0.0;
    for (const auto& p : pairs) sum += static_cast<double>(p.c) / p.e;
    return sum / static_cast<double>(pairs.size());
}

inline double divergence(const std::vector<Pair>& pairs) { return mncs(pairs) - crown(pairs); }

// (1/n - e_i/sum_e) * ratio_i per pair, in input order.
inline std::vector<double> attribution(const std::vector<Pair>& pairs) {
    double se = 0.0;
    for (const auto& p : pairs) se += p.e;
    const double inv_n = 1.0 / static_cast<double>(pairs.size());
    std::vector<double> out;
    for (const auto& p : pairs) {
        out.push_back((inv_n - p.e / se) * (static_cast<double>(p.c) / p.e));
    }
    return out;
}

// Direct cell-mean recomputation: for every distinct key, a fresh pass
// over the whole corpus. Quadratic and proud of it.
struct CellKey {
    std::string class_id;
    int year;
    citemetric::DocType doc_type;
    auto operator<=>(const CellKey&) const = default;
};

inline std::map<CellKey, double> cell_means(const citemetric::Corpus& corpus, bool journal_mode,
                                            int window_end) {
    std::set<CellKey> keys;
    for (const auto& pub : corpus.publications()) {
        if (pub.pub_year > window_end) continue;
        if (journal_mode) {
            keys.insert({pub.journal_id, pub.pub_year, pub.doc_type});
        } else {
            for (const auto& f : pub.field_ids) keys.insert({f, pub.pub_year, pub.doc_type});
        }
    }
    std::map<CellKey, double> means;
    for (const auto& key : keys) {
        double total = 0.0;
        long count = 0;
        for (const auto& pub : corpus.publications()) {
            if (pub.pub_year != key.year || pub.doc_type != key.doc_type) continue;
            const bool member =
                journal_mode ? pub.journal_id == key.class_id
                             : std::count(pub.field_ids.begin(), pub.field_ids.end(), key.class_id) > 0;
            if (!member) continue;
            std::int64_t cited = 0;
            for (const auto& [year, n] : pub.citations_by_year) {
                if (year <= window_end) cited += n;
            }
            total += static_cast<double>(cited);
            count += 1;
        }
        means[key] = total / static_cast<double>(count);
    }
    return means;
}

// Reference resampler following the documented bootstrap scheme to the
// letter: mt19937_64, indices rng() % n in order, statistics in draw
// order, sorted, linearly interpolated quantiles at (1-level)/2 and
// 1-(1-level)/2.
struct ReferenceInterval {
    double low = 0.0;
    double high = 0.0;
};

inline double reference_quantile(std::vector<double> sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = static_cast<double>(n - 1) * p;
    const auto i = static_cast<std::size_t>(h);
    if (i + 1 >= n) return sorted[n - 1];
    return sorted[i] + (h - static_cast<double>(i)) * (sorted[i + 1] - sorted[i]);
}

inline ReferenceInterval reference_bootstrap(const std::vector<Pair>& pairs, bool crown_stat,
                                             int n_resamples, double level, std::uint64_t seed) {
    const std::size_t n = pairs.size();
    std::mt19937_64 rng(seed);
    std::vector<double> stats;
    for (int b = 0; b < n_resamples; ++b) {
        std::vector<std::size_t> idx(n);
        for (std::size_t j = 0; j < n; ++j) idx[j] = static_cast<std::size_t>(rng() % n);
        if (crown_stat) {
            std::int64_t sc = 0;
            double se = 0.0;
            for (std::size_t j : idx) {
                sc += pairs[j].c;
                se += pairs[j].e;
            }
            stats.push_back(static_cast<double>(sc) / se);
        } else {
            double r = 0.0;
            for (std::size_t j : idx) r += static_cast<double>(pairs[j].c) / pairs[j].e;
            stats.push_back(r / static_cast<double>(n));
        }
    }
    std::sort(stats.begin(), stats.end());
    const double alpha = 1.0 - level;
    return {reference_quantile(stats, alpha / 2.0), reference_quantile(stats, 1.0 - alpha / 2.0)};
}

}  // namespace oracle
