#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cone/detector.hpp"
#include "cone/time.hpp"

namespace cone {

enum class Feedback { active, resolved, wont_fix };
enum class InteractionElement { pr_link, file_link, author_link };

std::string to_string(Feedback f);
std::string to_string(InteractionElement e);
Feedback parse_feedback(const std::string& s);                  // throws ValidationError
InteractionElement parse_interaction_element(const std::string& s);  // throws ValidationError

// One candidate as rendered in a notification: the scored pair plus the
// active PR's author, so the reader knows who to talk to.
struct NotificationCandidate {
    std::int64_t active_pr = 0;
    std::string author;
    double eoo = 0.0;
    std::vector<std::string> overlap_files;  // sorted
    int rce_count = 0;

    bool operator==(const NotificationCandidate&) const = default;
};

// An emitted (or shadow-suppressed) alert with its feedback state and
// per-element interaction counters.
struct Notification {
    std::string id;
    std::string repo_id;
    std::int64_t reference_pr = 0;
    Instant created_at = 0;
    std::vector<NotificationCandidate> candidates;  // non-empty, ranked
    Feedback feedback = Feedback::active;
    std::map<std::string, std::int64_t> interactions;  // element name -> click count
    bool emitted = true;  // false when produced in shadow mode

    std::set<std::int64_t> candidate_pr_ids() const;

    bool operator==(const Notification&) const = default;
};

std::string serialize_notification(const Notification& n);
Notification parse_notification(const std::string& text);

} // namespace cone
