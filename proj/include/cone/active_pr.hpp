#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "cone/time.hpp"

namespace cone {

enum class PrStatus { active, merged, abandoned };

std::string to_string(PrStatus s);

// Aggregated live state of one pull request, folded from its event stream.
// filtered_files is raw_files restricted to the allow list; hot-file removal
// happens later, at evaluation time, because hotness depends on `now`.
struct ActivePullRequest {
    std::string repo_id;
    std::int64_t pr_id = 0;
    std::string author;
    Instant created_at = 0;
    Instant last_updated = 0;
    std::set<std::string> raw_files;
    std::set<std::string> filtered_files;
    PrStatus status = PrStatus::active;
    std::set<std::string> interacting_users;

    bool operator==(const ActivePullRequest&) const = default;
};

} // namespace cone
