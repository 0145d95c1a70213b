// citemetric: normalized citation indicators over publication corpora.
//
// Subcommands: baseline, score, compare, window-sweep, synth.
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "citemetric/baseline.hpp"
#include "citemetric/config.hpp"
#include "citemetric/corpus.hpp"
#include "citemetric/csv.hpp"
#include "citemetric/errors.hpp"
#include "citemetric/indicators.hpp"
#include "citemetric/report.hpp"
#include "citemetric/stats.hpp"
#include "citemetric/synth.hpp"
#include "citemetric/window.hpp"

namespace fs = std::filesystem;
using namespace citemetric;

namespace {

struct CorpusArgs {
    std::string publications;
    std::string citations;
    std::string oeuvres;
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& args, bool oeuvres_required) {
    cmd->add_option("--publications", args.publications, "publications.csv input")->required();
    cmd->add_option("--citations", args.citations, "citations.csv input")->required();
    auto* o = cmd->add_option("--oeuvres", args.oeuvres, "oeuvres.csv input");
    if (oeuvres_required) o->required();
}

Corpus load_with_log(const CorpusArgs& args) {
    LoadReport report;
    std::optional<fs::path> oeuvres;
    if (!args.oeuvres.empty()) oeuvres = fs::path(args.oeuvres);
    Corpus corpus = load_corpus(args.publications, args.citations, oeuvres, report);
    std::cerr << "loaded " << report.n_publications << " publications, "
              << report.n_citation_rows << " citation rows, " << report.n_oeuvre_rows
              << " oeuvre rows (" << report.n_researchers << " researchers)\n";
    return corpus;
}

// Flags > config file (--config or CITEMETRIC_CONFIG) > defaults.
struct ConfigArgs {
    std::string config_file;
    std::string baseline_mode = "field";
    int window_end = 0;
    int min_pubs = 20;
    double expected_floor = 0.1;
    double ratio_flag = 5.0;
    double low_expected = 1.0;
    bool leave_one_out = false;
    double delta = 0.5;
    int bootstrap_resamples = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;
    bool bootstrap_requested = false;
};

void add_config_options(CLI::App* cmd, ConfigArgs& args, bool with_bootstrap) {
    cmd->add_option("--config", args.config_file,
                    "JSON config file (CITEMETRIC_CONFIG is used when unset)");
    cmd->add_option("--baseline-mode", args.baseline_mode, "field or journal normalization")
        ->check(CLI::IsMember({"field", "journal"}))
        ->capture_default_str();
    cmd->add_option("--window-end", args.window_end,
                    "census year: citations counted through this year inclusive");
    cmd->add_option("--min-pubs", args.min_pubs, "minimum publications held per researcher")
        ->capture_default_str();
    cmd->add_option("--expected-floor", args.expected_floor,
                    "exclude publications whose expected citations fall below this")
        ->capture_default_str();
    cmd->add_option("--ratio-flag", args.ratio_flag, "flag ratios above this threshold")
        ->capture_default_str();
    cmd->add_option("--low-expected", args.low_expected,
                    "flag expected values below this threshold")
        ->capture_default_str();
    cmd->add_flag("--leave-one-out", args.leave_one_out,
                  "remove each publication's own contribution from its baseline cells");
    cmd->add_option("--delta", args.delta, "divergence threshold for outlier counts")
        ->capture_default_str();
    if (with_bootstrap) {
        cmd->add_option("--bootstrap", args.bootstrap_resamples,
                        "enable bootstrap CIs with this many resamples (default 1000); "
                        "requires --seed");
        cmd->add_option("--level", args.level, "bootstrap confidence level")
            ->capture_default_str();
        cmd->add_option("--seed", args.seed, "master seed for bootstrap resampling");
    }
}

ScoringConfig resolve_config(const CLI::App* cmd, const ConfigArgs& args, bool window_required) {
    ScoringConfig config;

    std::string config_path = args.config_file;
    if (config_path.empty()) {
        if (const char* env = std::getenv("CITEMETRIC_CONFIG")) config_path = env;
    }
    if (!config_path.empty()) {
        config = load_scoring_config(config_path);
    }

    auto given = [&](const std::string& name) { return cmd->count(name) > 0; };
    if (given("--baseline-mode")) {
        config.baseline_mode = *baseline_mode_from_string(args.baseline_mode);
    }
    if (given("--window-end")) config.window_end = args.window_end;
    if (given("--min-pubs")) config.min_pubs = args.min_pubs;
    if (given("--expected-floor")) config.expected_floor = args.expected_floor;
    if (given("--ratio-flag")) config.ratio_flag = args.ratio_flag;
    if (given("--low-expected")) config.low_expected = args.low_expected;
    if (given("--leave-one-out")) config.leave_one_out = args.leave_one_out;
    if (given("--delta")) config.delta = args.delta;

    if (cmd->get_option_no_throw("--bootstrap") && given("--bootstrap")) {
        if (!given("--seed") && !(config.bootstrap && config.bootstrap->seed)) {
            throw Error("--bootstrap requires an explicit --seed (no wall-clock seeding)");
        }
        BootstrapConfig bc = config.bootstrap.value_or(BootstrapConfig{});
        bc.n_resamples = args.bootstrap_resamples;
        if (given("--level")) bc.level = args.level;
        if (given("--seed")) bc.seed = args.seed;
        config.bootstrap = bc;
    }

    if (window_required && config.window_end == 0) {
        throw Error("--window-end is required (or set window_end in the config file)");
    }
    config.validate();
    return config;
}

void write_excluded_researchers(const std::vector<SkippedResearcher>& skipped,
                                const fs::path& path) {
    std::string text = "researcher_id,n_total,reason\n";
    for (const auto& s : skipped) {
        text += csv::join({s.researcher_id, std::to_string(s.n_total), s.reason}) + '\n';
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure(path.string(), "cannot open for writing");
    out << text;
    if (!out) throw IoFailure(path.string(), "write error");
}

int run_baseline(const CorpusArgs& corpus_args, const CLI::App* cmd, const ConfigArgs& config_args,
                 const std::string& out_file) {
    const ScoringConfig config = resolve_config(cmd, config_args, true);
    const Corpus corpus = load_with_log(corpus_args);
    const BaselineTable table =
        build_baselines(corpus, config.baseline_mode, WindowSpec{config.window_end});
    write_baselines_csv(table, out_file);
    std::cerr << "wrote " << table.cells().size() << " baseline cells to " << out_file << "\n";
    return 0;
}

int run_score(const CorpusArgs& corpus_args, const CLI::App* cmd, const ConfigArgs& config_args,
              const std::string& out_dir, const std::string& format_name, int threads) {
    const ScoringConfig config = resolve_config(cmd, config_args, true);
    const auto format = report_format_from_string(format_name);
    if (!format) throw Error("unknown format '" + format_name + "'");

    const Corpus corpus = load_with_log(corpus_args);
    const BaselineTable table =
        build_baselines(corpus, config.baseline_mode, WindowSpec{config.window_end});
    const CohortResult cohort = score_cohort(corpus, table, config, threads);
    if (cohort.scores.empty()) {
        throw Error("no researcher meets the min_pubs filter; nothing to report");
    }
    const StatsById stats = compute_stats(cohort.scores, config, threads);

    ReportContext context{&corpus, &table, config};
    const EmitSummary summary = emit_report(cohort.scores, stats, context, out_dir, *format);
    write_excluded_researchers(cohort.skipped, fs::path(out_dir) / "excluded_researchers.csv");

    std::cerr << "scored " << summary.n_researchers << " researchers ("
              << cohort.skipped.size() << " below min_pubs), " << summary.n_audit_rows
              << " audit rows\n";
    for (const auto& f : summary.files_written) std::cerr << "wrote " << f.string() << "\n";
    return 0;
}

int run_compare(const CorpusArgs& corpus_args, const CLI::App* cmd, const ConfigArgs& config_args,
                const std::string& out_dir, int threads) {
    const ScoringConfig config = resolve_config(cmd, config_args, true);
    const Corpus corpus = load_with_log(corpus_args);
    const auto records =
        compare_at_window(corpus, WindowSpec{config.window_end}, config, threads);
    fs::create_directories(out_dir);
    const fs::path path =
        fs::path(out_dir) / ("compare_" + std::to_string(config.window_end) + ".csv");
    write_compare_csv(records, path);
    std::cerr << "wrote " << records.size() << " records to " << path.string() << "\n";
    return 0;
}

int run_window_sweep(const CorpusArgs& corpus_args, const CLI::App* cmd,
                     const ConfigArgs& config_args, const std::string& windows_arg,
                     const std::string& out_dir, int threads) {
    const ScoringConfig config = resolve_config(cmd, config_args, false);

    std::vector<WindowSpec> windows;
    std::string token;
    std::istringstream stream(windows_arg);
    while (std::getline(stream, token, ',')) {
        try {
            windows.push_back(WindowSpec{static_cast<int>(csv::parse_int(token))});
        } catch (const std::invalid_argument&) {
            throw Error("bad window year '" + token + "' in --windows");
        }
    }
    if (windows.empty()) throw Error("--windows needs at least one year");

    const Corpus corpus = load_with_log(corpus_args);
    const SweepResult sweep = window_sweep(corpus, windows, config.delta, config, threads);

    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < sweep.summaries.size(); ++i) {
        const fs::path path =
            fs::path(out_dir) /
            ("compare_" + std::to_string(sweep.summaries[i].window_end) + ".csv");
        write_compare_csv(sweep.per_window[i], path);
        std::cerr << "wrote " << sweep.per_window[i].size() << " records to " << path.string()
                  << "\n";
    }
    const fs::path sweep_path = fs::path(out_dir) / "sweep.csv";
    write_sweep_csv(sweep.summaries, sweep_path);
    std::cerr << "wrote " << sweep.summaries.size() << " summaries to " << sweep_path.string()
              << "\n";
    return 0;
}

struct SynthArgs {
    std::string spec_file;
    std::uint64_t seed = 0;
    int n_fields = 4;
    int n_journals = 8;
    int n_researchers = 50;
    int pubs_per_researcher = 25;
    int year_start = 1997;
    int year_end = 2006;
    int spike_pubs = 0;
    int spike_citations = 0;
    std::string out_dir = "synth_out";
};

int run_synth(const CLI::App* cmd, const SynthArgs& args) {
    GeneratorSpec spec;
    auto given = [&](const std::string& name) { return cmd->count(name) > 0; };
    if (!args.spec_file.empty()) {
        spec = load_generator_spec(args.spec_file);
    } else {
        if (!given("--seed")) {
            throw InvalidSpec("--seed is required when no --spec file is given");
        }
        spec.seed = args.seed;
        spec.n_fields = args.n_fields;
        spec.n_journals = args.n_journals;
        spec.n_researchers = args.n_researchers;
        spec.pubs_per_researcher = args.pubs_per_researcher;
        spec.year_start = args.year_start;
        spec.year_end = args.year_end;
        if (given("--spike-pubs") || given("--spike-citations")) {
            spec.recent_spike = RecentSpike{args.spike_pubs, args.spike_citations};
        }
        spec.validate();
    }
    const Corpus corpus = generate(spec);
    write_synthetic_corpus(spec, corpus, args.out_dir);
    std::cerr << "generated " << corpus.size() << " publications for "
              << corpus.researcher_oeuvres().size() << " researchers in " << args.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"citemetric: field- and journal-normalized citation indicators"};
    app.require_subcommand(1);
    // Subcommands hand unrecognized options (like --threads) back up.
    app.fallthrough();

    int threads = 1;
    app.add_option("--threads", threads, "worker thread cap (results are independent of it)")
        ->capture_default_str();

    // baseline
    auto* baseline_cmd =
        app.add_subcommand("baseline", "build expected-citation baselines and export them");
    CorpusArgs baseline_corpus;
    ConfigArgs baseline_config;
    std::string baseline_out = "baselines.csv";
    add_corpus_options(baseline_cmd, baseline_corpus, false);
    add_config_options(baseline_cmd, baseline_config, false);
    baseline_cmd->add_option("--out", baseline_out, "output CSV path")->capture_default_str();

    // score
    auto* score_cmd =
        app.add_subcommand("score", "run the full corpus -> baselines -> scores pipeline");
    CorpusArgs score_corpus;
    ConfigArgs score_config;
    std::string score_out = "scores_out";
    std::string score_format = "csv";
    add_corpus_options(score_cmd, score_corpus, true);
    add_config_options(score_cmd, score_config, true);
    score_cmd->add_option("--out", score_out, "output directory")->capture_default_str();
    score_cmd->add_option("--format", score_format, "report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // compare
    auto* compare_cmd =
        app.add_subcommand("compare", "both indicators per researcher at one census window");
    CorpusArgs compare_corpus;
    ConfigArgs compare_config;
    std::string compare_out = ".";
    add_corpus_options(compare_cmd, compare_corpus, true);
    add_config_options(compare_cmd, compare_config, false);
    compare_cmd->add_option("--out", compare_out, "output directory")->capture_default_str();

    // window-sweep
    auto* sweep_cmd = app.add_subcommand(
        "window-sweep", "compare indicators across census windows and summarize outliers");
    CorpusArgs sweep_corpus;
    ConfigArgs sweep_config;
    std::string sweep_windows;
    std::string sweep_out = ".";
    add_corpus_options(sweep_cmd, sweep_corpus, true);
    add_config_options(sweep_cmd, sweep_config, false);
    sweep_cmd->add_option("--windows", sweep_windows, "comma-separated census end years")
        ->required();
    sweep_cmd->add_option("--out", sweep_out, "output directory")->capture_default_str();

    // synth
    auto* synth_cmd =
        app.add_subcommand("synth", "generate a seeded synthetic corpus with provenance");
    SynthArgs synth_args;
    synth_cmd->add_option("--spec", synth_args.spec_file, "generator spec JSON file");
    synth_cmd->add_option("--seed", synth_args.seed,
                          "generator seed (required without --spec; no wall-clock seeding)");
    synth_cmd->add_option("--fields", synth_args.n_fields, "number of fields")
        ->capture_default_str();
    synth_cmd->add_option("--journals", synth_args.n_journals, "number of journals")
        ->capture_default_str();
    synth_cmd->add_option("--researchers", synth_args.n_researchers, "number of researchers")
        ->capture_default_str();
    synth_cmd->add_option("--pubs-per-researcher", synth_args.pubs_per_researcher,
                          "publications per researcher")
        ->capture_default_str();
    synth_cmd->add_option("--year-start", synth_args.year_start, "first publication year")
        ->capture_default_str();
    synth_cmd->add_option("--year-end", synth_args.year_end, "census year (last publication year)")
        ->capture_default_str();
    synth_cmd->add_option("--spike-pubs", synth_args.spike_pubs,
                          "census-year publications injected per researcher");
    synth_cmd->add_option("--spike-citations", synth_args.spike_citations,
                          "base census-year citations per researcher");
    synth_cmd->add_option("--out", synth_args.out_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (baseline_cmd->parsed()) {
            return run_baseline(baseline_corpus, baseline_cmd, baseline_config, baseline_out);
        }
        if (score_cmd->parsed()) {
            return run_score(score_corpus, score_cmd, score_config, score_out, score_format,
                             threads);
        }
        if (compare_cmd->parsed()) {
            return run_compare(compare_corpus, compare_cmd, compare_config, compare_out, threads);
        }
        if (sweep_cmd->parsed()) {
            return run_window_sweep(sweep_corpus, sweep_cmd, sweep_config, sweep_windows,
                                    sweep_out, threads);
        }
        if (synth_cmd->parsed()) {
            return run_synth(synth_cmd, synth_args);
        }
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
