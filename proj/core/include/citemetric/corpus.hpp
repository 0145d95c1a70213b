#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace citemetric {

enum class DocType { article, letter, review };

const char* to_string(DocType t);
// Case-insensitive; returns nullopt for unknown names.
std::optional<DocType> doc_type_from_string(std::string name);

// Citation census window: citations are counted through end_year inclusive.
struct WindowSpec {
    int end_year = 0;

    friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

// One indexed paper. Citations are stored as per-year totals, which is
// the minimal sufficient statistic for windowed counting.
struct Publication {
    std::string pub_id;
    std::string journal_id;
    std::vector<std::string> field_ids;  // non-empty, duplicate-free, order preserved
    int pub_year = 0;
    DocType doc_type = DocType::article;
    std::map<int, std::int64_t> citations_by_year;  // keys >= pub_year, counts >= 0

    friend bool operator==(const Publication&, const Publication&) = default;
};

// Sum of citations in years <= window.end_year.
// Throws WindowBeforePublication when the window ends before the paper appeared.
std::int64_t citations_up_to(const Publication& pub, WindowSpec window);

// Immutable publication store plus researcher -> publication assignments.
// Safe to share across threads once loaded.
class Corpus {
public:
    Corpus() = default;
    Corpus(std::vector<Publication> publications,
           std::map<std::string, std::set<std::string>> researcher_oeuvres);

    const std::vector<Publication>& publications() const { return publications_; }
    const std::map<std::string, std::set<std::string>>& researcher_oeuvres() const {
        return researcher_oeuvres_;
    }

    std::size_t size() const { return publications_.size(); }
    bool empty() const { return publications_.empty(); }

    const Publication* find(const std::string& pub_id) const;

    // Oeuvre publications in ascending pub_id order. Throws Error for an
    // unknown researcher.
    std::vector<const Publication*> oeuvre(const std::string& researcher_id) const;

    friend bool operator==(const Corpus& a, const Corpus& b) {
        return a.publications_ == b.publications_ && a.researcher_oeuvres_ == b.researcher_oeuvres_;
    }

private:
    void validate_and_index();

    std::vector<Publication> publications_;  // sorted by pub_id
    std::map<std::string, std::size_t> index_;
    std::map<std::string, std::set<std::string>> researcher_oeuvres_;
};

// Loads and validates the three corpus files.
//
//   publications.csv: pub_id,journal_id,pub_year,doc_type,field_ids
//                     (field_ids is a ';'-separated list)
//   citations.csv:    pub_id,year,count
//   oeuvres.csv:      researcher_id,pub_id
//
// Any invariant violation rejects the whole load: MalformedRow,
// DuplicatePubId, CitationBeforePublication, DanglingOeuvreReference.
Corpus load_corpus(const std::filesystem::path& publications_file,
                   const std::filesystem::path& citations_file,
                   const std::filesystem::path& oeuvres_file);

// Overload for pipelines that only need baselines; the oeuvre map is empty.
Corpus load_corpus(const std::filesystem::path& publications_file,
                   const std::filesystem::path& citations_file);

struct LoadReport {
    std::size_t n_publications = 0;
    std::size_t n_citation_rows = 0;
    std::size_t n_oeuvre_rows = 0;
    std::size_t n_researchers = 0;
};

// As load_corpus, additionally reporting row counts.
Corpus load_corpus(const std::filesystem::path& publications_file,
                   const std::filesystem::path& citations_file,
                   const std::optional<std::filesystem::path>& oeuvres_file,
                   LoadReport& report);

// Writers for the same three formats. Output is deterministic: rows are
// sorted, zero citation counts are omitted.
void write_publications_csv(const Corpus& corpus, const std::filesystem::path& path);
void write_citations_csv(const Corpus& corpus, const std::filesystem::path& path);
void write_oeuvres_csv(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace citemetric
