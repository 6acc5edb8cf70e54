#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cone/time.hpp"

namespace cone {

enum class EventType { created, updated, closed };
enum class CloseReason { merged, abandoned };

std::string to_string(EventType t);
std::string to_string(CloseReason r);

// One lifecycle event of a pull request — the sole ingestion unit.
// `files` carries the PR's cumulative current file set at this event,
// not a delta.
struct PullRequestEvent {
    std::string repo_id;
    std::int64_t pr_id = 0;
    EventType event_type = EventType::created;
    Instant timestamp = 0;
    std::string author;
    std::set<std::string> files;
    std::string title;
    std::vector<std::string> commit_messages;
    std::set<std::string> interacting_users;
    std::optional<CloseReason> close_reason;  // required iff event_type == closed
};

// Decodes and checks one wire/log record. Unknown top-level fields are
// ignored. Throws ValidationError naming the offending field; throws
// ParseError if `text` is not valid JSON.
PullRequestEvent validate_event(const std::string& text);

// Canonical re-serialization used by journals; key order is deterministic.
std::string serialize_event(const PullRequestEvent& event);

} // namespace cone
