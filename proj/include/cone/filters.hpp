#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cone/active_pr.hpp"
#include "cone/config.hpp"
#include "cone/time.hpp"

namespace cone {

// Lowercase extension of the final path segment, including the dot.
// Empty for extension-less names and dotfiles ("Makefile", ".gitignore").
std::string file_extension(const std::string& path);

bool is_allowed_file(const std::string& path, const RepoConfig& config);

// raw files restricted to the allow list.
std::set<std::string> filter_allowed(const std::set<std::string>& files,
                                     const RepoConfig& config);

// Per-path merge timestamps of completed PRs, pruned to a trailing 30-day
// window. Single writer: the per-repository ingestion sequence.
class EditFrequencyTracker {
public:
    static constexpr std::int64_t kWindowSeconds = 30 * kSecondsPerDay;

    void record_merge(const std::string& path, Instant merged_at);

    // Drops timestamps at or before now - 30d; afterwards every stored
    // timestamp lies in (now - 30d, now].
    void prune(Instant now);

    // Merges of `path` within (now - 30d, now].
    int count_in_window(const std::string& path, Instant now) const;

    const std::map<std::string, std::vector<Instant>>& merges() const { return merges_; }
    void clear() { merges_.clear(); }

    bool operator==(const EditFrequencyTracker&) const = default;

private:
    std::map<std::string, std::vector<Instant>> merges_;  // each vector sorted ascending
};

// True iff the path reached the monthly edit limit: merge count within
// (now - 30d, now] >= config.hot_file_edit_limit.
bool is_hot_file(const std::string& path, Instant now, const EditFrequencyTracker& tracker,
                 const RepoConfig& config);

// filtered_files minus hot files — the file set all overlap math runs on.
std::set<std::string> effective_files(const ActivePullRequest& pr, Instant now,
                                      const EditFrequencyTracker& tracker,
                                      const RepoConfig& config);

// Age gate, size gate, and a non-empty effective file set.
// Age is measured from creation; a PR exactly max_pr_age_days old still passes.
bool is_eligible_reference(const ActivePullRequest& pr, Instant now,
                           const EditFrequencyTracker& tracker, const RepoConfig& config);

// Pairing gates: distinct active PR passing the same age/size gates, a
// different author, and not already interacted with by the reference author.
bool is_candidate_pair(const ActivePullRequest& reference, const ActivePullRequest& other,
                       Instant now, const RepoConfig& config);

} // namespace cone
