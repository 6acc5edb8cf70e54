#include "cone/filters.hpp"

#include <algorithm>
#include <cctype>

namespace cone {

std::string file_extension(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    const std::size_t start = slash == std::string::npos ? 0 : slash + 1;
    const std::size_t dot = path.find_last_of('.');
    // No dot in the final segment, or a dotfile like ".gitignore".
    if (dot == std::string::npos || dot <= start) return {};
    std::string ext = path.substr(dot);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

bool is_allowed_file(const std::string& path, const RepoConfig& config) {
    const std::string ext = file_extension(path);
    if (ext.empty()) return false;
    return config.allow_list.count(ext) > 0;
}

std::set<std::string> filter_allowed(const std::set<std::string>& files,
                                     const RepoConfig& config) {
    std::set<std::string> out;
    for (const auto& f : files)
        if (is_allowed_file(f, config)) out.insert(f);
    return out;
}

void EditFrequencyTracker::record_merge(const std::string& path, Instant merged_at) {
    auto& v = merges_[path];
    // Timestamps arrive in non-decreasing order per repo; keep sorted regardless.
    if (!v.empty() && merged_at < v.back())
        v.insert(std::upper_bound(v.begin(), v.end(), merged_at), merged_at);
    else
        v.push_back(merged_at);
}

void EditFrequencyTracker::prune(Instant now) {
    const Instant cutoff = now - kWindowSeconds;
    for (auto it = merges_.begin(); it != merges_.end();) {
        auto& v = it->second;
        v.erase(v.begin(), std::upper_bound(v.begin(), v.end(), cutoff));
        if (v.empty())
            it = merges_.erase(it);
        else
            ++it;
    }
}

int EditFrequencyTracker::count_in_window(const std::string& path, Instant now) const {
    auto it = merges_.find(path);
    if (it == merges_.end()) return 0;
    const auto& v = it->second;
    auto lo = std::upper_bound(v.begin(), v.end(), now - kWindowSeconds);
    auto hi = std::upper_bound(v.begin(), v.end(), now);
    return static_cast<int>(hi - lo);
}

bool is_hot_file(const std::string& path, Instant now, const EditFrequencyTracker& tracker,
                 const RepoConfig& config) {
    return tracker.count_in_window(path, now) >= config.hot_file_edit_limit;
}

std::set<std::string> effective_files(const ActivePullRequest& pr, Instant now,
                                      const EditFrequencyTracker& tracker,
                                      const RepoConfig& config) {
    std::set<std::string> out;
    for (const auto& f : pr.filtered_files)
        if (!is_hot_file(f, now, tracker, config)) out.insert(f);
    return out;
}

namespace {

bool passes_age_size_gates(const ActivePullRequest& pr, Instant now,
                           const RepoConfig& config) {
    if (now - pr.created_at > days(config.max_pr_age_days)) return false;
    if (static_cast<int>(pr.raw_files.size()) > config.max_files_per_pr) return false;
    return true;
}

} // namespace

bool is_eligible_reference(const ActivePullRequest& pr, Instant now,
                           const EditFrequencyTracker& tracker, const RepoConfig& config) {
    if (pr.status != PrStatus::active) return false;
    if (!passes_age_size_gates(pr, now, config)) return false;
    return !effective_files(pr, now, tracker, config).empty();
}

bool is_candidate_pair(const ActivePullRequest& reference, const ActivePullRequest& other,
                       Instant now, const RepoConfig& config) {
    if (other.status != PrStatus::active) return false;
    if (other.pr_id == reference.pr_id) return false;
    if (!passes_age_size_gates(other, now, config)) return false;
    if (config.exclude_same_author && other.author == reference.author) return false;
    if (other.interacting_users.count(reference.author) > 0) return false;
    return true;
}

std::string to_string(PrStatus s) {
    switch (s) {
        case PrStatus::active: return "active";
        case PrStatus::merged: return "merged";
        case PrStatus::abandoned: return "abandoned";
    }
    return "?";
}

} // namespace cone
