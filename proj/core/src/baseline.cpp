#include "citemetric/baseline.hpp"

#include <fstream>

#include "citemetric/csv.hpp"
#include "citemetric/errors.hpp"

namespace citemetric {

const BaselineCell* BaselineTable::find(const BaselineKey& key) const {
    auto it = cells_.find(key);
    return it == cells_.end() ? nullptr : &it->second;
}

BaselineTable build_baselines(const Corpus& corpus, BaselineMode mode, WindowSpec window) {
    if (corpus.empty()) {
        throw EmptyCorpus();
    }
    std::map<BaselineKey, BaselineCell> cells;
    for (const Publication& pub : corpus.publications()) {
        if (pub.pub_year > window.end_year) continue;
        const std::int64_t cited = citations_up_to(pub, window);
        if (mode == BaselineMode::journal) {
            BaselineCell& cell = cells[{pub.journal_id, pub.pub_year, pub.doc_type}];
            cell.count += 1;
            cell.total_citations += cited;
        } else {
            for (const auto& field : pub.field_ids) {
                BaselineCell& cell = cells[{field, pub.pub_year, pub.doc_type}];
                cell.count += 1;
                cell.total_citations += cited;
            }
        }
    }
    return BaselineTable(mode, window, std::move(cells));
}

namespace {

// Shared walk over the cells a publication belongs to. `adjust` removes
// the publication's own windowed count from each cell first.
std::optional<double> mean_over_cells(const Publication& pub, const BaselineTable& table,
                                      bool adjust) {
    std::int64_t own = 0;
    if (adjust) {
        if (pub.pub_year > table.window().end_year) return std::nullopt;
        own = citations_up_to(pub, table.window());
    }

    auto cell_mean = [&](const BaselineKey& key) -> std::optional<double> {
        const BaselineCell* cell = table.find(key);
        if (!cell) return std::nullopt;
        if (!adjust) return cell->mean();
        if (cell->count <= 1) return std::nullopt;  // empty once this pub leaves
        return static_cast<double>(cell->total_citations - own) /
               static_cast<double>(cell->count - 1);
    };

    if (table.mode() == BaselineMode::journal) {
        return cell_mean({pub.journal_id, pub.pub_year, pub.doc_type});
    }
    double sum = 0.0;
    for (const auto& field : pub.field_ids) {
        auto m = cell_mean({field, pub.pub_year, pub.doc_type});
        if (!m) return std::nullopt;
        sum += *m;
    }
    return sum / static_cast<double>(pub.field_ids.size());
}

}  // namespace

std::optional<double> expected_citations(const Publication& pub, const BaselineTable& table) {
    return mean_over_cells(pub, table, false);
}

std::optional<double> leave_one_out_adjust(const Publication& pub, const BaselineTable& table) {
    return mean_over_cells(pub, table, true);
}

void write_baselines_csv(const BaselineTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path.string(), "cannot open for writing");
    out << "mode,class_id,pub_year,doc_type,window_end,cell_count,mean_citations\n";
    for (const auto& [key, cell] : table.cells()) {
        out << csv::join({to_string(table.mode()), key.class_id, std::to_string(key.pub_year),
                          to_string(key.doc_type), std::to_string(table.window().end_year),
                          std::to_string(cell.count), csv::format_real(cell.mean())})
            << '\n';
    }
    if (!out) throw IoFailure(path.string(), "write error");
}

}  // namespace citemetric
