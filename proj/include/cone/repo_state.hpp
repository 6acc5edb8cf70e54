#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cone/active_pr.hpp"
#include "cone/config.hpp"
#include "cone/event.hpp"
#include "cone/filters.hpp"
#include "cone/notification.hpp"
#include "cone/rce.hpp"
#include "cone/time.hpp"

namespace cone {

struct Telemetry {
    std::int64_t events_processed = 0;
    std::int64_t evaluations_run = 0;
    std::int64_t notifications_emitted = 0;   // includes shadow-suppressed ones
    std::vector<double> latency_ms;           // in-memory only, not persisted

    bool counters_equal(const Telemetry& other) const {
        return events_processed == other.events_processed &&
               evaluations_run == other.evaluations_run &&
               notifications_emitted == other.notifications_emitted;
    }
};

// Everything the service knows about one repository. Mutated only by that
// repository's serialized ingestion sequence.
struct RepositoryState {
    std::string repo_id;
    std::map<std::int64_t, ActivePullRequest> active_index;
    RceList rce_snapshot;                        // built_at == 0 means never built
    EditFrequencyTracker tracker;
    std::vector<PrInterval> completed_intervals;  // pruned to the RCE window
    std::set<std::int64_t> retired_pr_ids;        // closed PRs; reopening is rejected
    std::vector<Notification> notifications;      // append-only, ordered by created_at
    Telemetry telemetry;

    // Union of candidate pr-ids already notified, per reference PR.
    std::vector<std::set<std::int64_t>> notified_sets_for(std::int64_t reference_pr) const;

    const Notification* find_notification(const std::string& id) const;
    Notification* find_notification(const std::string& id);
};

// Folds one validated event into the state, refreshing the RCE snapshot when
// stale and running detection on created/updated. Returns the notifications
// persisted by this call. Throws SequencingError on out-of-order input
// (state is left untouched).
std::vector<Notification> ingest(RepositoryState& state, const PullRequestEvent& event,
                                 const RepoConfig& config, Instant now);

// Feedback and interaction telemetry. Both throw NotFoundError on unknown ids.
Notification record_feedback(RepositoryState& state, const std::string& notification_id,
                             Feedback verdict);
std::int64_t record_interaction(RepositoryState& state, const std::string& notification_id,
                                InteractionElement element);

// PR intervals for an RCE rebuild at `now`: completed spans plus the live
// spans of currently active PRs.
std::vector<PrInterval> interval_history(const RepositoryState& state, Instant now,
                                         const RepoConfig& config);

} // namespace cone
