#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "citemetric/corpus.hpp"

namespace citemetric {

struct RecentSpike {
    int n_pubs = 0;      // extra census-year publications per researcher
    int citations = 0;   // base census-year citations per researcher (see generate())
};

struct GeneratorSpec {
    std::uint64_t seed = 0;
    int n_fields = 1;
    int n_journals = 1;
    int n_researchers = 1;
    int pubs_per_researcher = 1;
    int year_start = 0;
    int year_end = 0;
    // field id -> mean citation rate. Empty: ids f01..fNN with rates
    // cycling {0.5, 1.5, 4.0, 9.0}. Non-empty: must hold exactly
    // n_fields entries.
    std::map<std::string, double> field_citation_rates;
    std::optional<RecentSpike> recent_spike;

    void validate() const;  // throws InvalidSpec

    // The effective spec with field ids/rates resolved; this is what
    // spec.json records.
    GeneratorSpec resolved() const;
};

// Deterministic synthetic corpus. All randomness comes from one
// std::mt19937_64 stream seeded with spec.seed and consumed in a fixed
// order, so a spec maps to exactly one corpus.
//
// Sampling, documented because reproducibility is part of the contract:
//   unit(rng)        = (rng() >> 11) * 2^-53, uniform in [0,1)
//   bounded(rng, n)  = rng() % n
//   poisson(rng, mu) = Knuth multiplication method over unit draws
//
// Structure:
//   - journal j<k> belongs to field k mod n_fields
//   - per researcher, pubs_per_researcher publications: year uniform in
//     [year_start, year_end]; doc type 80% article / 10% letter / 10%
//     review; the journal's field, plus a second field with probability
//     0.2
//   - citations for year = pub_year + a are Poisson with mean
//     rate(fields) * doc_mult * age_weight(a), where rate(fields) is the
//     mean of the publication's field rates, doc_mult is 1.0 article /
//     0.5 letter / 2.0 review, and age_weight is 0.25 at age 0, 0.75 at
//     age 1, 1.0 after. Draws run through year_end + 2 so extended
//     census windows have citation data; zero draws are not stored.
//   - recent_spike: every researcher also gets n_pubs publications in
//     year_end whose census-year citations total
//     round(citations * min(20, 1/(1-u))) for one unit draw u per
//     researcher (a heavy-tailed multiplier, so spike sizes vary across
//     the cohort), split as evenly as possible. Spike publications take
//     no other census-year draws but earn ordinary Poisson citations in
//     the two post-census years.
Corpus generate(const GeneratorSpec& spec);

// Writes publications.csv, citations.csv, oeuvres.csv and a spec.json
// provenance record into the directory.
void write_synthetic_corpus(const GeneratorSpec& spec, const Corpus& corpus,
                            const std::filesystem::path& directory);

GeneratorSpec generator_spec_from_json_text(const std::string& text);
GeneratorSpec load_generator_spec(const std::filesystem::path& path);
std::string to_json_text(const GeneratorSpec& spec);

// Hand-built fixture: one researcher with 53 publications and 349
// windowed citations at the 2006 census; 50 year-2000 publications in a
// cell of mean 8.4 plus 3 census-year publications sharing 10 citations
// in a cell of mean 0.4. Under the 2006 window its ratio-of-averages
// score is below 1 while its mean-of-ratios score is above 1 — the
// canonical census-year instability shape.
Corpus researcher_a_corpus();

}  // namespace citemetric
