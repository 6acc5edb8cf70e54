#pragma once

#include <set>
#include <string>

namespace cone {

// Per-repository tuning knobs. Defaults are the service-wide starting values;
// repository administrators can override any subset through the config file.
struct RepoConfig {
    // Candidate selection thresholds.
    double eoo_min = 50.0;      // percentage gate on the extent of overlap
    int rce_min = 2;            // minimum rarely-concurrently-edited files in the overlap
    int min_overlap_files = 2;  // minimum overlapping files for the EOO branch

    // Eligibility gates.
    int max_pr_age_days = 30;
    int max_files_per_pr = 50;
    std::set<std::string> allow_list = {".cs", ".c",  ".cpp", ".ts",
                                        ".py", ".java", ".js", ".sql"};
    int hot_file_edit_limit = 20;  // merges per trailing 30 days

    // RCE list maintenance.
    int rce_window_days = 90;
    int rce_refresh_days = 7;

    // Behavior switches.
    bool shadow_mode = false;
    bool exclude_same_author = true;      // drop pairs authored by the same user
    bool rce_pr_level_concurrency = false;  // alternative reading: all files of any
                                            // time-overlapping PR count as concurrent

    bool operator==(const RepoConfig&) const = default;
};

// Parses a flat JSON object; absent keys keep their defaults.
// Throws ParseError on malformed JSON (message names the line) and
// ValidationError on out-of-range values or unknown keys (message names the key).
RepoConfig parse_config(const std::string& text);

// Inverse of parse_config: emits every key.
std::string serialize_config(const RepoConfig& config);

// Range checks shared by parse_config and programmatic construction.
void validate_config(const RepoConfig& config);

} // namespace cone
