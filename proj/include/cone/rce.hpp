#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cone/config.hpp"
#include "cone/time.hpp"

namespace cone {

// One PR's activity span with its allow-list-filtered file set.
// closed_at is `now` for PRs still active at build time.
struct PrInterval {
    std::int64_t pr_id = 0;
    std::string author;
    Instant created_at = 0;
    Instant closed_at = 0;
    std::set<std::string> files;

    bool operator==(const PrInterval&) const = default;
};

// Windowed set of rarely-concurrently-edited file paths for one repository.
// Immutable snapshot; refreshes produce a new value that is swapped in whole.
struct RceList {
    std::string repo_id;
    Instant built_at = 0;
    int window_days = 0;
    std::set<std::string> files;

    bool operator==(const RceList&) const = default;
};

// Files that appear in two PRs whose activity spans intersect (closed
// intervals — touching at a single instant counts). With
// config.rce_pr_level_concurrency, every file of any time-overlapping PR
// counts instead.
std::set<std::string> concurrently_edited_files(const std::vector<PrInterval>& history,
                                                const RepoConfig& config);

// Steps over the trailing window: files edited in at least one windowed PR,
// minus the concurrently edited ones. History entries created outside
// (now - rce_window_days, now] are ignored.
RceList build_rce_list(const std::string& repo_id, const std::vector<PrInterval>& history,
                       Instant now, const RepoConfig& config);

// Incremental refresh: removes members that became concurrent in the slid
// window, drops members whose edits aged out, and adds newly discovered
// isolated files. Equals build_rce_list over the slid window.
RceList update_rce_list(const RceList& old, const std::vector<PrInterval>& recent_history,
                        Instant now, const RepoConfig& config);

// |files ∩ list.files| — Step 5 of the detection algorithm.
int count_rces(const RceList& list, const std::set<std::string>& files);

bool needs_refresh(const RceList& list, Instant now, const RepoConfig& config);

// JSON document {repo_id, built_at, window_days, files:[...]}.
std::string serialize_rce_list(const RceList& list);
RceList parse_rce_list(const std::string& text);

} // namespace cone
