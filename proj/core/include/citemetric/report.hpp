#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "citemetric/baseline.hpp"
#include "citemetric/config.hpp"
#include "citemetric/corpus.hpp"
#include "citemetric/indicators.hpp"
#include "citemetric/stats.hpp"

namespace citemetric {

enum class ReportFormat { csv, json };

std::optional<ReportFormat> report_format_from_string(const std::string& name);

// Optional per-researcher statistics attached to a report.
struct ResearcherStats {
    std::optional<SignificanceResult> significance;
    std::optional<BootstrapResult> crown_ci;
    std::optional<BootstrapResult> mncs_ci;
};

using StatsById = std::map<std::string, ResearcherStats>;

// What the audit needs beyond the scores themselves: the corpus and
// baseline table the run consulted, and the effective config.
struct ReportContext {
    const Corpus* corpus = nullptr;
    const BaselineTable* table = nullptr;
    ScoringConfig config;
};

// One audit line per publication in a researcher's oeuvre, scored or
// excluded. Empty optionals mean "not computable" (e.g. the observed
// count of a publication newer than the window).
struct AuditRow {
    std::string researcher_id;
    std::string pub_id;
    std::optional<std::int64_t> observed;
    std::optional<double> expected;
    std::optional<double> ratio;
    std::vector<std::string> cells;  // "class_id:year:doc_type" keys consulted
    std::vector<std::string> flags;  // low_expected, high_ratio
    std::string exclusion_reason;    // empty when the publication was scored
};

struct AuditTrail {
    std::vector<AuditRow> rows;  // researcher_id ascending, then pub_id
    ScoringConfig config;
    std::string corpus_fingerprint;
    std::string baseline_fingerprint;
    std::string config_fingerprint;
};

AuditTrail build_audit(const std::vector<OeuvreScore>& scores, const ReportContext& context);

struct EmitSummary {
    std::vector<std::filesystem::path> files_written;
    std::size_t n_researchers = 0;
    std::size_t n_audit_rows = 0;
};

// Writes the result tables to `destination`. Ordering is deterministic
// (researcher_id ascending) and identical inputs produce byte-identical
// files. CSV and JSON variants carry the same values.
//
//   csv:  scores.csv, audit.csv, report_meta.json
//   json: report.json
//
// scores.csv columns: researcher_id,n_total,n_included,n_excluded,sum_c,
// sum_e,crown,mncs,divergence,flags — plus crown_ci_low,crown_ci_high,
// mncs_ci_low,mncs_ci_high,z_sg when the config enables the bootstrap.
// Researchers whose publications were all excluded keep their row with
// empty indicator fields and the all_excluded flag.
EmitSummary emit_report(const std::vector<OeuvreScore>& scores, const StatsById& stats,
                        const ReportContext& context, const std::filesystem::path& destination,
                        ReportFormat format);

// Computes significance and (when configured) bootstrap intervals for
// every score with enough included publications. Bootstrap substreams
// derive from (master seed, researcher_id), so results do not depend on
// evaluation order or thread count.
StatsById compute_stats(const std::vector<OeuvreScore>& scores, const ScoringConfig& config,
                        int threads = 1);

// Reads the per-researcher scores back out of a report.json document.
std::vector<OeuvreScore> parse_report_scores(const std::string& json_text);

}  // namespace citemetric
