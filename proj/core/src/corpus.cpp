#include "citemetric/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "citemetric/csv.hpp"
#include "citemetric/errors.hpp"

namespace citemetric {

namespace {

std::vector<std::string> split_semicolons(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ';') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void expect_header(const std::string& file, const std::vector<std::string>& row,
                   const std::vector<std::string>& expected) {
    if (row != expected) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) want += ',';
            want += expected[i];
        }
        throw MalformedRow(file, 1, "bad header, expected '" + want + "'");
    }
}

void expect_columns(const std::string& file, std::size_t line,
                    const std::vector<std::string>& row, std::size_t n) {
    if (row.size() != n) {
        throw MalformedRow(file, line,
                           "expected " + std::to_string(n) + " columns, got " +
                               std::to_string(row.size()));
    }
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoFailure(path.string(), "cannot open for writing");
    }
    return out;
}

}  // namespace

const char* to_string(DocType t) {
    switch (t) {
        case DocType::article: return "article";
        case DocType::letter: return "letter";
        case DocType::review: return "review";
    }
    return "article";
}

std::optional<DocType> doc_type_from_string(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "article") return DocType::article;
    if (name == "letter") return DocType::letter;
    if (name == "review") return DocType::review;
    return std::nullopt;
}

std::int64_t citations_up_to(const Publication& pub, WindowSpec window) {
    if (window.end_year < pub.pub_year) {
        throw WindowBeforePublication(pub.pub_id, window.end_year, pub.pub_year);
    }
    std::int64_t total = 0;
    for (const auto& [year, count] : pub.citations_by_year) {
        if (year > window.end_year) break;  // map is ordered
        total += count;
    }
    return total;
}

Corpus::Corpus(std::vector<Publication> publications,
               std::map<std::string, std::set<std::string>> researcher_oeuvres)
    : publications_(std::move(publications)), researcher_oeuvres_(std::move(researcher_oeuvres)) {
    validate_and_index();
}

void Corpus::validate_and_index() {
    std::sort(publications_.begin(), publications_.end(),
              [](const Publication& a, const Publication& b) { return a.pub_id < b.pub_id; });
    for (std::size_t i = 0; i < publications_.size(); ++i) {
        const Publication& pub = publications_[i];
        if (!index_.emplace(pub.pub_id, i).second) {
            throw DuplicatePubId(pub.pub_id);
        }
        if (pub.field_ids.empty()) {
            throw Error("publication '" + pub.pub_id + "' has no field ids");
        }
        std::set<std::string> seen(pub.field_ids.begin(), pub.field_ids.end());
        if (seen.size() != pub.field_ids.size()) {
            throw Error("publication '" + pub.pub_id + "' has duplicate field ids");
        }
        for (const auto& [year, count] : pub.citations_by_year) {
            if (year < pub.pub_year) {
                throw CitationBeforePublication(pub.pub_id, year, pub.pub_year);
            }
            if (count < 0) {
                throw Error("publication '" + pub.pub_id + "' has negative citation count");
            }
        }
    }
    for (const auto& [researcher, pubs] : researcher_oeuvres_) {
        for (const auto& pub_id : pubs) {
            if (!index_.count(pub_id)) {
                throw DanglingOeuvreReference(researcher, pub_id);
            }
        }
    }
}

const Publication* Corpus::find(const std::string& pub_id) const {
    auto it = index_.find(pub_id);
    return it == index_.end() ? nullptr : &publications_[it->second];
}

std::vector<const Publication*> Corpus::oeuvre(const std::string& researcher_id) const {
    auto it = researcher_oeuvres_.find(researcher_id);
    if (it == researcher_oeuvres_.end()) {
        throw Error("unknown researcher '" + researcher_id + "'");
    }
    std::vector<const Publication*> pubs;
    pubs.reserve(it->second.size());
    for (const auto& pub_id : it->second) {  // set: already pub_id ascending
        pubs.push_back(find(pub_id));
    }
    return pubs;
}

Corpus load_corpus(const std::filesystem::path& publications_file,
                   const std::filesystem::path& citations_file,
                   const std::optional<std::filesystem::path>& oeuvres_file,
                   LoadReport& report) {
    std::vector<Publication> pubs;
    std::map<std::string, std::size_t> pub_index;

    const std::string pubs_name = publications_file.string();
    csv::read_file(publications_file, [&](std::size_t line, const std::vector<std::string>& row) {
        if (line == 1) {
            expect_header(pubs_name, row, {"pub_id", "journal_id", "pub_year", "doc_type", "field_ids"});
            return;
        }
        expect_columns(pubs_name, line, row, 5);
        Publication pub;
        pub.pub_id = row[0];
        pub.journal_id = row[1];
        if (pub.pub_id.empty()) throw MalformedRow(pubs_name, line, "empty pub_id");
        if (pub.journal_id.empty()) throw MalformedRow(pubs_name, line, "empty journal_id");
        try {
            pub.pub_year = static_cast<int>(csv::parse_int(row[2]));
        } catch (const std::invalid_argument& e) {
            throw MalformedRow(pubs_name, line, std::string("pub_year: ") + e.what());
        }
        auto doc = doc_type_from_string(row[3]);
        if (!doc) throw MalformedRow(pubs_name, line, "unknown doc_type '" + row[3] + "'");
        pub.doc_type = *doc;
        pub.field_ids = split_semicolons(row[4]);
        for (const auto& f : pub.field_ids) {
            if (f.empty()) throw MalformedRow(pubs_name, line, "empty field id");
        }
        std::set<std::string> unique_fields(pub.field_ids.begin(), pub.field_ids.end());
        if (unique_fields.size() != pub.field_ids.size()) {
            throw MalformedRow(pubs_name, line, "duplicate field ids");
        }
        if (pub_index.count(pub.pub_id)) {
            throw DuplicatePubId(pub.pub_id);
        }
        pub_index.emplace(pub.pub_id, pubs.size());
        pubs.push_back(std::move(pub));
        ++report.n_publications;
    });

    const std::string cits_name = citations_file.string();
    csv::read_file(citations_file, [&](std::size_t line, const std::vector<std::string>& row) {
        if (line == 1) {
            expect_header(cits_name, row, {"pub_id", "year", "count"});
            return;
        }
        expect_columns(cits_name, line, row, 3);
        auto it = pub_index.find(row[0]);
        if (it == pub_index.end()) {
            throw MalformedRow(cits_name, line, "unknown pub_id '" + row[0] + "'");
        }
        Publication& pub = pubs[it->second];
        int year = 0;
        std::int64_t count = 0;
        try {
            year = static_cast<int>(csv::parse_int(row[1]));
            count = static_cast<std::int64_t>(csv::parse_uint(row[2]));
        } catch (const std::invalid_argument& e) {
            throw MalformedRow(cits_name, line, e.what());
        }
        if (year < pub.pub_year) {
            throw CitationBeforePublication(pub.pub_id, year, pub.pub_year);
        }
        if (!pub.citations_by_year.emplace(year, count).second) {
            throw MalformedRow(cits_name, line,
                               "duplicate citation year " + std::to_string(year) +
                                   " for pub_id '" + pub.pub_id + "'");
        }
        ++report.n_citation_rows;
    });

    std::map<std::string, std::set<std::string>> oeuvres;
    if (oeuvres_file) {
        const std::string oeuv_name = oeuvres_file->string();
        csv::read_file(*oeuvres_file, [&](std::size_t line, const std::vector<std::string>& row) {
            if (line == 1) {
                expect_header(oeuv_name, row, {"researcher_id", "pub_id"});
                return;
            }
            expect_columns(oeuv_name, line, row, 2);
            if (row[0].empty()) throw MalformedRow(oeuv_name, line, "empty researcher_id");
            if (!pub_index.count(row[1])) {
                throw DanglingOeuvreReference(row[0], row[1]);
            }
            oeuvres[row[0]].insert(row[1]);
            ++report.n_oeuvre_rows;
        });
    }
    report.n_researchers = oeuvres.size();

    return Corpus(std::move(pubs), std::move(oeuvres));
}

Corpus load_corpus(const std::filesystem::path& publications_file,
                   const std::filesystem::path& citations_file,
                   const std::filesystem::path& oeuvres_file) {
    LoadReport report;
    return load_corpus(publications_file, citations_file, std::optional{oeuvres_file}, report);
}

Corpus load_corpus(const std::filesystem::path& publications_file,
                   const std::filesystem::path& citations_file) {
    LoadReport report;
    return load_corpus(publications_file, citations_file, std::nullopt, report);
}

void write_publications_csv(const Corpus& corpus, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "pub_id,journal_id,pub_year,doc_type,field_ids\n";
    for (const auto& pub : corpus.publications()) {
        std::string fields;
        for (std::size_t i = 0; i < pub.field_ids.size(); ++i) {
            if (i) fields += ';';
            fields += pub.field_ids[i];
        }
        out << csv::join({pub.pub_id, pub.journal_id, std::to_string(pub.pub_year),
                          to_string(pub.doc_type), fields})
            << '\n';
    }
    if (!out) throw IoFailure(path.string(), "write error");
}

void write_citations_csv(const Corpus& corpus, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "pub_id,year,count\n";
    for (const auto& pub : corpus.publications()) {
        for (const auto& [year, count] : pub.citations_by_year) {
            if (count == 0) continue;
            out << csv::join({pub.pub_id, std::to_string(year), std::to_string(count)}) << '\n';
        }
    }
    if (!out) throw IoFailure(path.string(), "write error");
}

void write_oeuvres_csv(const Corpus& corpus, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "researcher_id,pub_id\n";
    for (const auto& [researcher, pubs] : corpus.researcher_oeuvres()) {
        for (const auto& pub_id : pubs) {
            out << csv::join({researcher, pub_id}) << '\n';
        }
    }
    if (!out) throw IoFailure(path.string(), "write error");
}

}  // namespace citemetric
