#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <tuple>

#include "citemetric/config.hpp"
#include "citemetric/corpus.hpp"

namespace citemetric {

struct BaselineKey {
    std::string class_id;  // field id or journal id, per table mode
    int pub_year = 0;
    DocType doc_type = DocType::article;

    friend auto operator<=>(const BaselineKey& a, const BaselineKey& b) {
        return std::tie(a.class_id, a.pub_year, a.doc_type) <=>
               std::tie(b.class_id, b.pub_year, b.doc_type);
    }
    friend bool operator==(const BaselineKey&, const BaselineKey&) = default;
};

// Cells keep the exact integer citation total next to the member count,
// so mean() is always total/count with no accumulated rounding and
// leave-one-out adjustment stays exact.
struct BaselineCell {
    std::int64_t count = 0;
    std::int64_t total_citations = 0;

    double mean() const { return static_cast<double>(total_citations) / static_cast<double>(count); }
};

// Expected-citation means keyed by (class, publication year, doc type)
// for one census window. Immutable once built.
class BaselineTable {
public:
    BaselineTable(BaselineMode mode, WindowSpec window, std::map<BaselineKey, BaselineCell> cells)
        : mode_(mode), window_(window), cells_(std::move(cells)) {}

    BaselineMode mode() const { return mode_; }
    WindowSpec window() const { return window_; }
    const std::map<BaselineKey, BaselineCell>& cells() const { return cells_; }

    const BaselineCell* find(const BaselineKey& key) const;

private:
    BaselineMode mode_;
    WindowSpec window_;
    std::map<BaselineKey, BaselineCell> cells_;
};

// Aggregates the reference corpus into baseline cells. Publications past
// the window end are skipped (their cells do not exist yet at this
// census). In field mode a publication with m fields contributes its
// whole windowed count to each of its m field cells (whole counting).
// Throws EmptyCorpus when the corpus holds no publications.
BaselineTable build_baselines(const Corpus& corpus, BaselineMode mode, WindowSpec window);

// Expected citations e_i for one publication: the journal-cell mean in
// journal mode, the unweighted arithmetic mean of the publication's
// field-cell means in field mode. nullopt when any required cell is
// absent — a missing expectation is a value here, not an error.
std::optional<double> expected_citations(const Publication& pub, const BaselineTable& table);

// Like expected_citations but with the publication's own contribution
// removed from every cell it touches. Only meaningful when the
// publication was part of the reference corpus the table was built from.
// nullopt when any touched cell would become empty.
std::optional<double> leave_one_out_adjust(const Publication& pub, const BaselineTable& table);

// baselines.csv: mode,class_id,pub_year,doc_type,window_end,cell_count,mean_citations
void write_baselines_csv(const BaselineTable& table, const std::filesystem::path& path);

}  // namespace citemetric
