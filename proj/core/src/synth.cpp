#include "citemetric/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "citemetric/errors.hpp"

namespace citemetric {

namespace {

double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

// Knuth multiplication method; fine for the small means used here.
std::int64_t poisson(std::mt19937_64& rng, double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= unit(rng);
    } while (p > limit);
    return k - 1;
}

std::string zero_padded(const char* prefix, int value, int width) {
    std::string digits = std::to_string(value);
    std::string out = prefix;
    for (int i = static_cast<int>(digits.size()); i < width; ++i) out += '0';
    return out + digits;
}

double doc_multiplier(DocType t) {
    switch (t) {
        case DocType::article: return 1.0;
        case DocType::letter: return 0.5;
        case DocType::review: return 2.0;
    }
    return 1.0;
}

double age_weight(int age) {
    if (age <= 0) return 0.25;
    if (age == 1) return 0.75;
    return 1.0;
}

}  // namespace

void GeneratorSpec::validate() const {
    if (n_fields < 1) throw InvalidSpec("n_fields must be >= 1");
    if (n_journals < 1) throw InvalidSpec("n_journals must be >= 1");
    if (n_researchers < 1) throw InvalidSpec("n_researchers must be >= 1");
    if (pubs_per_researcher < 1) throw InvalidSpec("pubs_per_researcher must be >= 1");
    if (year_start > year_end) throw InvalidSpec("year_start must be <= year_end");
    if (!field_citation_rates.empty() &&
        field_citation_rates.size() != static_cast<std::size_t>(n_fields)) {
        throw InvalidSpec("field_citation_rates must have exactly n_fields entries");
    }
    for (const auto& [field, rate] : field_citation_rates) {
        if (field.empty()) throw InvalidSpec("empty field id in field_citation_rates");
        if (rate < 0.0) throw InvalidSpec("citation rate for '" + field + "' must be >= 0");
    }
    if (recent_spike) {
        if (recent_spike->n_pubs < 1) throw InvalidSpec("recent_spike.n_pubs must be >= 1");
        if (recent_spike->citations < 0) throw InvalidSpec("recent_spike.citations must be >= 0");
    }
}

GeneratorSpec GeneratorSpec::resolved() const {
    validate();
    GeneratorSpec out = *this;
    if (out.field_citation_rates.empty()) {
        static constexpr double kDefaultRates[] = {0.5, 1.5, 4.0, 9.0};
        for (int k = 0; k < out.n_fields; ++k) {
            out.field_citation_rates[zero_padded("f", k + 1, 2)] = kDefaultRates[k % 4];
        }
    }
    return out;
}

Corpus generate(const GeneratorSpec& raw_spec) {
    const GeneratorSpec spec = raw_spec.resolved();

    std::vector<std::string> fields;
    std::vector<double> rates;
    for (const auto& [field, rate] : spec.field_citation_rates) {
        fields.push_back(field);
        rates.push_back(rate);
    }

    std::vector<std::string> journals;
    for (int k = 0; k < spec.n_journals; ++k) {
        journals.push_back(zero_padded("j", k + 1, 2));
    }

    std::mt19937_64 rng(spec.seed);
    std::vector<Publication> pubs;
    std::map<std::string, std::set<std::string>> oeuvres;

    const int horizon = spec.year_end + 2;
    int pub_counter = 0;

    auto field_rate = [&](const Publication& pub) {
        double sum = 0.0;
        for (const auto& f : pub.field_ids) {
            const auto it = spec.field_citation_rates.find(f);
            sum += it->second;
        }
        return sum / static_cast<double>(pub.field_ids.size());
    };

    auto draw_journal_and_fields = [&](Publication& pub) {
        const auto j = static_cast<std::size_t>(bounded(rng, journals.size()));
        pub.journal_id = journals[j];
        pub.field_ids = {fields[j % fields.size()]};
        if (fields.size() > 1 && unit(rng) < 0.2) {
            auto extra = static_cast<std::size_t>(bounded(rng, fields.size() - 1));
            if (fields[extra] == pub.field_ids[0]) extra = fields.size() - 1;
            pub.field_ids.push_back(fields[extra]);
        }
    };

    auto draw_citations = [&](Publication& pub, int first_year) {
        const double base = field_rate(pub) * doc_multiplier(pub.doc_type);
        for (int year = first_year; year <= horizon; ++year) {
            const std::int64_t count = poisson(rng, base * age_weight(year - pub.pub_year));
            if (count > 0) pub.citations_by_year[year] = count;
        }
    };

    for (int r = 0; r < spec.n_researchers; ++r) {
        const std::string researcher = zero_padded("r", r + 1, 4);
        auto& oeuvre = oeuvres[researcher];

        for (int p = 0; p < spec.pubs_per_researcher; ++p) {
            Publication pub;
            pub.pub_id = zero_padded("p", ++pub_counter, 6);
            pub.pub_year = spec.year_start +
                           static_cast<int>(bounded(
                               rng, static_cast<std::uint64_t>(spec.year_end - spec.year_start + 1)));
            const double d = unit(rng);
            pub.doc_type = d < 0.8 ? DocType::article : (d < 0.9 ? DocType::letter : DocType::review);
            draw_journal_and_fields(pub);
            draw_citations(pub, pub.pub_year);
            oeuvre.insert(pub.pub_id);
            pubs.push_back(std::move(pub));
        }

        if (spec.recent_spike) {
            const double multiplier = std::min(20.0, 1.0 / (1.0 - unit(rng)));
            const auto total =
                static_cast<std::int64_t>(std::llround(spec.recent_spike->citations * multiplier));
            const int n_spike = spec.recent_spike->n_pubs;
            for (int s = 0; s < n_spike; ++s) {
                Publication pub;
                pub.pub_id = zero_padded("p", ++pub_counter, 6);
                pub.pub_year = spec.year_end;
                pub.doc_type = DocType::article;
                draw_journal_and_fields(pub);
                // Even split of the census-year total, remainder to the
                // earliest spike publications.
                const std::int64_t share = total / n_spike + (s < total % n_spike ? 1 : 0);
                if (share > 0) pub.citations_by_year[pub.pub_year] = share;
                draw_citations(pub, pub.pub_year + 1);
                oeuvre.insert(pub.pub_id);
                pubs.push_back(std::move(pub));
            }
        }
    }

    return Corpus(std::move(pubs), std::move(oeuvres));
}

void write_synthetic_corpus(const GeneratorSpec& spec, const Corpus& corpus,
                            const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);
    write_publications_csv(corpus, directory / "publications.csv");
    write_citations_csv(corpus, directory / "citations.csv");
    write_oeuvres_csv(corpus, directory / "oeuvres.csv");
    const auto spec_path = directory / "spec.json";
    std::ofstream out(spec_path, std::ios::binary);
    if (!out) throw IoFailure(spec_path.string(), "cannot open for writing");
    out << to_json_text(spec.resolved()) << '\n';
    if (!out) throw IoFailure(spec_path.string(), "write error");
}

GeneratorSpec generator_spec_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidSpec(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidSpec("spec must be a JSON object");

    GeneratorSpec spec;
    try {
        if (!j.contains("seed")) throw InvalidSpec("spec requires an explicit seed");
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.n_fields = j.at("n_fields").get<int>();
        spec.n_journals = j.at("n_journals").get<int>();
        spec.n_researchers = j.at("n_researchers").get<int>();
        spec.pubs_per_researcher = j.at("pubs_per_researcher").get<int>();
        spec.year_start = j.at("year_range").at("start").get<int>();
        spec.year_end = j.at("year_range").at("end").get<int>();
        if (j.contains("field_citation_rates")) {
            for (const auto& [field, rate] : j.at("field_citation_rates").items()) {
                spec.field_citation_rates[field] = rate.get<double>();
            }
        }
        if (j.contains("recent_spike") && !j.at("recent_spike").is_null()) {
            RecentSpike spike;
            spike.n_pubs = j.at("recent_spike").at("n_pubs").get<int>();
            spike.citations = j.at("recent_spike").at("citations").get<int>();
            spec.recent_spike = spike;
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpec(std::string("bad value: ") + e.what());
    }
    spec.validate();
    return spec;
}

GeneratorSpec load_generator_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure(path.string(), "cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return generator_spec_from_json_text(buf.str());
}

std::string to_json_text(const GeneratorSpec& spec) {
    nlohmann::json j;
    j["seed"] = spec.seed;
    j["n_fields"] = spec.n_fields;
    j["n_journals"] = spec.n_journals;
    j["n_researchers"] = spec.n_researchers;
    j["pubs_per_researcher"] = spec.pubs_per_researcher;
    j["year_range"] = {{"start", spec.year_start}, {"end", spec.year_end}};
    j["field_citation_rates"] = spec.field_citation_rates;
    if (spec.recent_spike) {
        j["recent_spike"] = {{"n_pubs", spec.recent_spike->n_pubs},
                             {"citations", spec.recent_spike->citations}};
    } else {
        j["recent_spike"] = nullptr;
    }
    return j.dump(2);
}

Corpus researcher_a_corpus() {
    std::vector<Publication> pubs;
    std::map<std::string, std::set<std::string>> oeuvres;
    auto& oeuvre = oeuvres["A"];

    auto add = [&](const std::string& pub_id, int year, std::map<int, std::int64_t> citations,
                   bool owned) {
        Publication pub;
        pub.pub_id = pub_id;
        pub.journal_id = "j_card";
        pub.field_ids = {"card"};
        pub.pub_year = year;
        pub.doc_type = DocType::article;
        pub.citations_by_year = std::move(citations);
        if (owned) oeuvre.insert(pub.pub_id);
        pubs.push_back(std::move(pub));
    };

    // Researcher A, 50 established publications: 39 with 7 citations and
    // 11 with 6 (sum 339), all counted by the 2006 census.
    for (int i = 0; i < 50; ++i) {
        const std::int64_t c = i < 39 ? 7 : 6;
        add(zero_padded("A", i + 1, 3), 2000, {{2001, c - 2}, {2002, 2}}, true);
    }
    // 3 census-year publications sharing 10 citations.
    add("A051", 2006, {{2006, 4}}, true);
    add("A052", 2006, {{2006, 3}}, true);
    add("A053", 2006, {{2006, 3}}, true);

    // Reference filler for the 2000 cell: 50 publications totaling 501
    // citations, bringing the cell to count 100, total 840, mean 8.4.
    for (int i = 0; i < 50; ++i) {
        const std::int64_t c = i < 49 ? 10 : 11;
        add(zero_padded("F", i + 1, 3), 2000, {{2003, c}}, false);
    }
    // Reference filler for the 2006 cell: 47 publications totaling 10
    // citations (10 singly-cited, 37 uncited), bringing the cell to
    // count 50, total 20, mean 0.4.
    for (int i = 0; i < 47; ++i) {
        std::map<int, std::int64_t> cites;
        if (i < 10) cites[2006] = 1;
        add(zero_padded("G", i + 1, 3), 2006, std::move(cites), false);
    }

    return Corpus(std::move(pubs), std::move(oeuvres));
}

}  // namespace citemetric
