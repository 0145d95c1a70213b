#include "citemetric/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "citemetric/csv.hpp"
#include "citemetric/errors.hpp"
#include "citemetric/fingerprint.hpp"
#include "citemetric/parallel.hpp"

namespace citemetric {

namespace {

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ';';
        out += tokens[i];
    }
    return out;
}

std::vector<std::string> cells_consulted(const Publication& pub, const ReportContext& context) {
    std::vector<std::string> cells;
    const int year = pub.pub_year;
    auto cell_name = [&](const std::string& class_id) {
        return class_id + ":" + std::to_string(year) + ":" + to_string(pub.doc_type);
    };
    if (context.config.baseline_mode == BaselineMode::journal) {
        cells.push_back(cell_name(pub.journal_id));
    } else {
        for (const auto& f : pub.field_ids) cells.push_back(cell_name(f));
    }
    return cells;
}

std::vector<std::string> score_flags(const OeuvreScore& score) {
    std::vector<std::string> flags;
    if (score.n_included == 0) {
        flags.push_back("all_excluded");
        return flags;
    }
    if (score.n_excluded > 0) flags.push_back("excluded");
    bool high_ratio = false, low_expected = false;
    for (const auto& sp : score.scored) {
        high_ratio |= sp.high_ratio_flag;
        low_expected |= sp.low_expected_flag;
    }
    if (high_ratio) flags.push_back("high_ratio");
    if (low_expected) flags.push_back("low_expected");
    return flags;
}

std::string opt_real(const std::optional<double>& v) {
    return v ? csv::format_real(*v) : std::string();
}

nlohmann::json real_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path.string(), "cannot open for writing");
    out << text;
    if (!out) throw IoFailure(path.string(), "write error");
}

nlohmann::json meta_json(const AuditTrail& audit, std::size_t n_researchers) {
    nlohmann::json meta;
    meta["schema_version"] = 1;
    meta["config"] = nlohmann::json::parse(to_json_text(audit.config));
    meta["fingerprints"] = {{"corpus", audit.corpus_fingerprint},
                            {"baselines", audit.baseline_fingerprint},
                            {"config", audit.config_fingerprint}};
    meta["n_researchers"] = n_researchers;
    meta["n_audit_rows"] = audit.rows.size();
    return meta;
}

}  // namespace

std::optional<ReportFormat> report_format_from_string(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    return std::nullopt;
}

AuditTrail build_audit(const std::vector<OeuvreScore>& scores, const ReportContext& context) {
    if (!context.corpus || !context.table) {
        throw Error("report context requires corpus and baseline table");
    }
    AuditTrail audit;
    audit.config = context.config;
    audit.corpus_fingerprint = fingerprint_corpus(*context.corpus);
    audit.baseline_fingerprint = fingerprint_baselines(*context.table);
    audit.config_fingerprint = fingerprint_config(context.config);

    for (const auto& score : scores) {
        // Merge scored and excluded rows back into pub_id order; both
        // lists are already sorted.
        std::size_t si = 0, ei = 0;
        while (si < score.scored.size() || ei < score.exclusions.size()) {
            const bool take_scored =
                ei >= score.exclusions.size() ||
                (si < score.scored.size() &&
                 score.scored[si].pub_id < score.exclusions[ei].pub_id);
            AuditRow row;
            row.researcher_id = score.researcher_id;
            if (take_scored) {
                const auto& sp = score.scored[si++];
                row.pub_id = sp.pub_id;
                row.observed = sp.observed;
                row.expected = sp.expected;
                row.ratio = sp.ratio;
                if (sp.low_expected_flag) row.flags.push_back("low_expected");
                if (sp.high_ratio_flag) row.flags.push_back("high_ratio");
            } else {
                const auto& ex = score.exclusions[ei++];
                row.pub_id = ex.pub_id;
                row.exclusion_reason = ex.reason;
                const Publication* pub = context.corpus->find(ex.pub_id);
                if (pub && pub->pub_year <= context.table->window().end_year) {
                    row.observed = citations_up_to(*pub, context.table->window());
                }
            }
            if (const Publication* pub = context.corpus->find(row.pub_id)) {
                row.cells = cells_consulted(*pub, context);
            }
            audit.rows.push_back(std::move(row));
        }
    }
    return audit;
}

StatsById compute_stats(const std::vector<OeuvreScore>& scores, const ScoringConfig& config,
                        int threads) {
    std::vector<ResearcherStats> slots(scores.size());
    parallel_for(scores.size(), threads, [&](std::size_t i) {
        const auto& score = scores[i];
        ResearcherStats rs;
        if (score.n_included >= 2) {
            rs.significance = schubert_glanzel_z(score);
        }
        if (config.bootstrap && score.n_included >= 1) {
            const std::uint64_t seed = derive_seed(config.bootstrap->seed, score.researcher_id);
            rs.crown_ci = bootstrap_ci(score.scored, Indicator::crown,
                                       config.bootstrap->n_resamples, config.bootstrap->level, seed);
            rs.mncs_ci = bootstrap_ci(score.scored, Indicator::mncs,
                                      config.bootstrap->n_resamples, config.bootstrap->level, seed);
        }
        slots[i] = std::move(rs);
    });
    StatsById stats;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        stats.emplace(scores[i].researcher_id, std::move(slots[i]));
    }
    return stats;
}

EmitSummary emit_report(const std::vector<OeuvreScore>& scores, const StatsById& stats,
                        const ReportContext& context, const std::filesystem::path& destination,
                        ReportFormat format) {
    if (scores.empty()) {
        throw Error("report needs at least one score");
    }
    std::vector<const OeuvreScore*> ordered;
    ordered.reserve(scores.size());
    for (const auto& s : scores) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(), [](const OeuvreScore* a, const OeuvreScore* b) {
        return a->researcher_id < b->researcher_id;
    });
    std::vector<OeuvreScore> sorted_scores;
    sorted_scores.reserve(ordered.size());
    for (const auto* s : ordered) sorted_scores.push_back(*s);

    const AuditTrail audit = build_audit(sorted_scores, context);
    const bool with_stats = context.config.bootstrap.has_value();

    std::filesystem::create_directories(destination);
    EmitSummary summary;
    summary.n_researchers = sorted_scores.size();
    summary.n_audit_rows = audit.rows.size();

    if (format == ReportFormat::csv) {
        std::string text = "researcher_id,n_total,n_included,n_excluded,sum_c,sum_e,crown,mncs,divergence,flags";
        if (with_stats) text += ",crown_ci_low,crown_ci_high,mncs_ci_low,mncs_ci_high,z_sg";
        text += '\n';
        for (const auto& score : sorted_scores) {
            const bool defined = score.n_included > 0;
            std::vector<std::string> fields = {
                score.researcher_id,
                std::to_string(score.n_total),
                std::to_string(score.n_included),
                std::to_string(score.n_excluded),
                std::to_string(score.sum_observed),
                csv::format_real(score.sum_expected),
                defined ? csv::format_real(score.crown) : std::string(),
                defined ? csv::format_real(score.mncs) : std::string(),
                defined ? csv::format_real(score.mncs - score.crown) : std::string(),
                join_tokens(score_flags(score))};
            if (with_stats) {
                const auto it = stats.find(score.researcher_id);
                const ResearcherStats* rs = it == stats.end() ? nullptr : &it->second;
                fields.push_back(rs && rs->crown_ci ? csv::format_real(rs->crown_ci->ci_low) : "");
                fields.push_back(rs && rs->crown_ci ? csv::format_real(rs->crown_ci->ci_high) : "");
                fields.push_back(rs && rs->mncs_ci ? csv::format_real(rs->mncs_ci->ci_low) : "");
                fields.push_back(rs && rs->mncs_ci ? csv::format_real(rs->mncs_ci->ci_high) : "");
                fields.push_back(rs && rs->significance && rs->significance->z
                                     ? csv::format_real(*rs->significance->z)
                                     : "");
            }
            text += csv::join(fields) + '\n';
        }
        const auto scores_path = destination / "scores.csv";
        write_text(scores_path, text);
        summary.files_written.push_back(scores_path);

        std::string audit_text =
            "researcher_id,pub_id,observed,expected,ratio,cells,flags,exclusion_reason\n";
        for (const auto& row : audit.rows) {
            audit_text += csv::join({row.researcher_id, row.pub_id,
                                     row.observed ? std::to_string(*row.observed) : "",
                                     opt_real(row.expected), opt_real(row.ratio),
                                     join_tokens(row.cells), join_tokens(row.flags),
                                     row.exclusion_reason}) +
                          '\n';
        }
        const auto audit_path = destination / "audit.csv";
        write_text(audit_path, audit_text);
        summary.files_written.push_back(audit_path);

        const auto meta_path = destination / "report_meta.json";
        write_text(meta_path, meta_json(audit, sorted_scores.size()).dump(2) + "\n");
        summary.files_written.push_back(meta_path);
        return summary;
    }

    // JSON: everything in one document.
    nlohmann::json doc = meta_json(audit, sorted_scores.size());
    doc["researchers"] = nlohmann::json::array();
    std::size_t audit_cursor = 0;
    for (const auto& score : sorted_scores) {
        nlohmann::json r;
        r["researcher_id"] = score.researcher_id;
        r["n_total"] = score.n_total;
        r["n_included"] = score.n_included;
        r["n_excluded"] = score.n_excluded;
        r["sum_observed"] = score.sum_observed;
        r["sum_expected"] = score.sum_expected;
        r["crown"] = real_or_null(score.crown);
        r["mncs"] = real_or_null(score.mncs);
        r["divergence"] =
            score.n_included > 0 ? real_or_null(score.mncs - score.crown) : nlohmann::json();
        r["flags"] = score_flags(score);
        r["publications"] = nlohmann::json::array();
        for (std::size_t i = 0; i < score.n_total && audit_cursor < audit.rows.size();
             ++i, ++audit_cursor) {
            const auto& row = audit.rows[audit_cursor];
            nlohmann::json p;
            p["pub_id"] = row.pub_id;
            p["observed"] = row.observed ? nlohmann::json(*row.observed) : nlohmann::json();
            p["expected"] = row.expected ? nlohmann::json(*row.expected) : nlohmann::json();
            p["ratio"] = row.ratio ? nlohmann::json(*row.ratio) : nlohmann::json();
            p["cells"] = row.cells;
            p["flags"] = row.flags;
            p["exclusion_reason"] =
                row.exclusion_reason.empty() ? nlohmann::json() : nlohmann::json(row.exclusion_reason);
            r["publications"].push_back(std::move(p));
        }
        const auto it = stats.find(score.researcher_id);
        if (it != stats.end()) {
            const auto& rs = it->second;
            if (rs.significance) {
                r["significance"] = {
                    {"z", rs.significance->z ? nlohmann::json(*rs.significance->z) : nlohmann::json()},
                    {"mean_observed", rs.significance->mean_observed},
                    {"mean_expected", rs.significance->mean_expected},
                    {"standard_error", rs.significance->standard_error}};
            }
            auto ci_json = [](const BootstrapResult& b) {
                return nlohmann::json{{"indicator", to_string(b.indicator)},
                                      {"point", b.point},
                                      {"ci_low", b.ci_low},
                                      {"ci_high", b.ci_high},
                                      {"n_resamples", b.n_resamples},
                                      {"seed", b.seed}};
            };
            if (rs.crown_ci) r["crown_ci"] = ci_json(*rs.crown_ci);
            if (rs.mncs_ci) r["mncs_ci"] = ci_json(*rs.mncs_ci);
        }
        doc["researchers"].push_back(std::move(r));
    }
    const auto report_path = destination / "report.json";
    write_text(report_path, doc.dump(2) + "\n");
    summary.files_written.push_back(report_path);
    return summary;
}

std::vector<OeuvreScore> parse_report_scores(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("report is not valid JSON: ") + e.what());
    }
    std::vector<OeuvreScore> scores;
    for (const auto& r : doc.at("researchers")) {
        OeuvreScore score;
        score.researcher_id = r.at("researcher_id").get<std::string>();
        score.n_total = r.at("n_total").get<std::size_t>();
        score.n_included = r.at("n_included").get<std::size_t>();
        score.n_excluded = r.at("n_excluded").get<std::size_t>();
        score.sum_observed = r.at("sum_observed").get<std::int64_t>();
        score.sum_expected = r.at("sum_expected").get<double>();
        score.crown = r.at("crown").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                              : r.at("crown").get<double>();
        score.mncs = r.at("mncs").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                            : r.at("mncs").get<double>();
        for (const auto& p : r.at("publications")) {
            if (!p.at("exclusion_reason").is_null()) {
                score.exclusions.push_back({p.at("pub_id").get<std::string>(),
                                            p.at("exclusion_reason").get<std::string>()});
                continue;
            }
            ScoredPublication sp;
            sp.pub_id = p.at("pub_id").get<std::string>();
            sp.observed = p.at("observed").get<std::int64_t>();
            sp.expected = p.at("expected").get<double>();
            sp.ratio = p.at("ratio").get<double>();
            for (const auto& flag : p.at("flags")) {
                if (flag == "low_expected") sp.low_expected_flag = true;
                if (flag == "high_ratio") sp.high_ratio_flag = true;
            }
            score.scored.push_back(std::move(sp));
        }
        scores.push_back(std::move(score));
    }
    return scores;
}

}  // namespace citemetric
