#include "citemetric/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "citemetric/errors.hpp"

namespace citemetric {

const char* to_string(BaselineMode m) {
    return m == BaselineMode::field ? "field" : "journal";
}

std::optional<BaselineMode> baseline_mode_from_string(const std::string& name) {
    if (name == "field") return BaselineMode::field;
    if (name == "journal") return BaselineMode::journal;
    return std::nullopt;
}

void ScoringConfig::validate() const {
    if (min_pubs < 1) throw Error("min_pubs must be >= 1");
    if (expected_floor < 0) throw Error("expected_floor must be >= 0");
    if (ratio_flag < 0) throw Error("ratio_flag must be >= 0");
    if (low_expected < 0) throw Error("low_expected must be >= 0");
    if (bootstrap) {
        if (bootstrap->n_resamples < 1) throw Error("bootstrap n_resamples must be >= 1");
        if (!(bootstrap->level > 0.0 && bootstrap->level < 1.0)) {
            throw Error("bootstrap level must be in (0, 1)");
        }
    }
}

ScoringConfig scoring_config_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error("config must be a JSON object");

    static const std::set<std::string> known = {
        "baseline_mode", "window_end",  "min_pubs",      "expected_floor", "ratio_flag",
        "low_expected",  "leave_one_out", "delta",       "bootstrap"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw Error("unknown config key '" + key + "'");
    }

    ScoringConfig config;
    try {
        if (j.contains("baseline_mode")) {
            auto mode = baseline_mode_from_string(j.at("baseline_mode").get<std::string>());
            if (!mode) throw Error("baseline_mode must be 'field' or 'journal'");
            config.baseline_mode = *mode;
        }
        if (j.contains("window_end")) config.window_end = j.at("window_end").get<int>();
        if (j.contains("min_pubs")) config.min_pubs = j.at("min_pubs").get<int>();
        if (j.contains("expected_floor")) config.expected_floor = j.at("expected_floor").get<double>();
        if (j.contains("ratio_flag")) config.ratio_flag = j.at("ratio_flag").get<double>();
        if (j.contains("low_expected")) config.low_expected = j.at("low_expected").get<double>();
        if (j.contains("leave_one_out")) config.leave_one_out = j.at("leave_one_out").get<bool>();
        if (j.contains("delta")) config.delta = j.at("delta").get<double>();
        if (j.contains("bootstrap") && !j.at("bootstrap").is_null()) {
            const auto& b = j.at("bootstrap");
            BootstrapConfig bc;
            if (b.contains("n_resamples")) bc.n_resamples = b.at("n_resamples").get<int>();
            if (b.contains("level")) bc.level = b.at("level").get<double>();
            if (!b.contains("seed")) throw Error("bootstrap config requires an explicit seed");
            bc.seed = b.at("seed").get<std::uint64_t>();
            config.bootstrap = bc;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad config value: ") + e.what());
    }
    config.validate();
    return config;
}

ScoringConfig load_scoring_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure(path.string(), "cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scoring_config_from_json_text(buf.str());
}

std::string to_json_text(const ScoringConfig& config) {
    nlohmann::json j;
    j["baseline_mode"] = to_string(config.baseline_mode);
    j["window_end"] = config.window_end;
    j["min_pubs"] = config.min_pubs;
    j["expected_floor"] = config.expected_floor;
    j["ratio_flag"] = config.ratio_flag;
    j["low_expected"] = config.low_expected;
    j["leave_one_out"] = config.leave_one_out;
    j["delta"] = config.delta;
    if (config.bootstrap) {
        j["bootstrap"] = {{"n_resamples", config.bootstrap->n_resamples},
                          {"level", config.bootstrap->level},
                          {"seed", config.bootstrap->seed}};
    } else {
        j["bootstrap"] = nullptr;
    }
    return j.dump(2);
}

}  // namespace citemetric
