#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace citemetric {

enum class BaselineMode { field, journal };

const char* to_string(BaselineMode m);
std::optional<BaselineMode> baseline_mode_from_string(const std::string& name);

struct BootstrapConfig {
    int n_resamples = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;  // always explicit; never wall-clock

    friend bool operator==(const BootstrapConfig&, const BootstrapConfig&) = default;
};

// Everything a scoring run depends on. Echoed verbatim into report
// headers so results stay traceable to their parameters.
struct ScoringConfig {
    BaselineMode baseline_mode = BaselineMode::field;
    int window_end = 0;
    int min_pubs = 20;             // cohort filter on publications held
    double expected_floor = 0.1;   // e_i below this excludes the publication
    double ratio_flag = 5.0;       // diagnostic: flags ratios above this
    double low_expected = 1.0;     // diagnostic: flags e_i below this
    bool leave_one_out = false;    // subtract own contribution from baseline cells
    double delta = 0.5;            // divergence threshold for sweep outlier counts
    std::optional<BootstrapConfig> bootstrap;

    // Throws Error when a field is out of range (min_pubs < 1,
    // expected_floor < 0, level outside (0,1), n_resamples < 1).
    void validate() const;

    friend bool operator==(const ScoringConfig&, const ScoringConfig&) = default;
};

// JSON round-trip for config files and report headers. Unknown keys are
// rejected to keep config files honest.
ScoringConfig scoring_config_from_json_text(const std::string& text);
ScoringConfig load_scoring_config(const std::filesystem::path& path);
std::string to_json_text(const ScoringConfig& config);

}  // namespace citemetric
