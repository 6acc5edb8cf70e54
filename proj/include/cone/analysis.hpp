#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cone/config.hpp"
#include "cone/event.hpp"
#include "cone/time.hpp"

namespace cone {

// One merged pull request of the study corpus (abandoned PRs are excluded).
struct CompletedPr {
    std::int64_t pr_id = 0;
    std::string author;
    Instant created_at = 0;
    Instant merged_at = 0;
    std::set<std::string> files;  // allow-list- and hot-file-filtered
    std::string title;
    std::vector<std::string> commit_messages;
    bool is_bug_fix = false;
};

enum class EditMode { concurrent, non_concurrent };

// One (path, PR) pair. mode == concurrent iff another PR editing the path
// has an overlapping [created_at, merged_at] span.
struct EditRecord {
    std::string path;
    std::int64_t pr_id = 0;
    Instant merged_at = 0;
    EditMode mode = EditMode::non_concurrent;
};

// True iff the title or any commit message token-matches "bug" or "fix"
// (case-insensitive, whole word) and none of them contains the phrase
// "test case" or "unit test".
bool tag_bug_fix(const std::string& title, const std::vector<std::string>& commit_messages);
bool tag_bug_fix(const CompletedPr& pr);

// Study corpus from an event log, with the standard cleansing filters applied
// per repo: merged PRs only, open spans capped at max_pr_age_days, at most
// max_files_per_pr raw files, allow-listed extensions, and global removal of
// hot files (any trailing 30-day window with >= hot_file_edit_limit merges).
std::map<std::string, std::vector<CompletedPr>> build_analysis_corpus(
    const std::vector<PullRequestEvent>& events, const RepoConfig& config);

std::vector<EditRecord> classify_edits(const std::vector<CompletedPr>& history);

struct RatesTable {
    std::vector<int> windows_days;
    std::int64_t concurrent_edits = 0;
    std::int64_t non_concurrent_edits = 0;
    std::vector<double> concurrent_pct;      // parallel to windows_days
    std::vector<double> non_concurrent_pct;  // parallel to windows_days

    bool empty() const { return concurrent_edits == 0 && non_concurrent_edits == 0; }
};

// Share of edits of each mode whose path shows up in a bug-fix PR merged
// within (merged_at, merged_at + W]. With distinct_files, the unit is the
// distinct path instead of the individual edit.
RatesTable bug_induction_rates(const std::vector<CompletedPr>& history,
                               const std::vector<int>& windows_days = {1, 7, 14, 30},
                               bool distinct_files = false);

struct CorrelationRow {
    std::string repo_id;
    std::int64_t n = 0;  // distinct files
    std::optional<double> rho_total, rho_concurrent, rho_non_concurrent;
    std::optional<double> p_total, p_concurrent, p_non_concurrent;
};

struct CorrelationReport {
    std::vector<CorrelationRow> rows;
    std::vector<std::string> warnings;
};

// Per repo: ranks file edit counts (total / concurrent / non-concurrent)
// against per-file bug-fix counts. Significance comes from a seeded
// permutation test. Repos with fewer than two distinct files are dropped
// with a warning; a zero-variance column is left undefined with a warning.
CorrelationReport correlation_report(
    const std::map<std::string, std::vector<CompletedPr>>& corpus,
    std::int64_t permutation_iterations, std::uint64_t seed);

// "0.298***" — three decimals plus significance stars
// (*** p<0.001, ** p<0.01, * p<0.05), "n/a" when undefined.
std::string format_correlation_value(std::optional<double> rho, std::optional<double> p);

} // namespace cone
