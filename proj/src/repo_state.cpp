#include "cone/repo_state.hpp"

#include <algorithm>

#include "cone/detector.hpp"
#include "cone/errors.hpp"
#include "cone/overlap.hpp"

namespace cone {

std::vector<std::set<std::int64_t>> RepositoryState::notified_sets_for(
    std::int64_t reference_pr) const {
    std::vector<std::set<std::int64_t>> sets;
    for (const auto& n : notifications)
        if (n.reference_pr == reference_pr) sets.push_back(n.candidate_pr_ids());
    return sets;
}

const Notification* RepositoryState::find_notification(const std::string& id) const {
    for (const auto& n : notifications)
        if (n.id == id) return &n;
    return nullptr;
}

Notification* RepositoryState::find_notification(const std::string& id) {
    for (auto& n : notifications)
        if (n.id == id) return &n;
    return nullptr;
}

std::vector<PrInterval> interval_history(const RepositoryState& state, Instant now,
                                         const RepoConfig& config) {
    std::vector<PrInterval> history = state.completed_intervals;
    for (const auto& [pr_id, pr] : state.active_index) {
        PrInterval span;
        span.pr_id = pr_id;
        span.author = pr.author;
        span.created_at = pr.created_at;
        span.closed_at = std::max(now, pr.created_at);
        span.files = pr.filtered_files;
        history.push_back(std::move(span));
    }
    (void)config;
    return history;
}

namespace {

[[noreturn]] void sequencing(const PullRequestEvent& ev, const std::string& why) {
    throw SequencingError("repo " + ev.repo_id + " pr " + std::to_string(ev.pr_id) + ": " +
                          why);
}

void check_sequencing(const RepositoryState& state, const PullRequestEvent& ev) {
    const bool known_active = state.active_index.count(ev.pr_id) > 0;
    const bool retired = state.retired_pr_ids.count(ev.pr_id) > 0;
    switch (ev.event_type) {
        case EventType::created:
            if (known_active) sequencing(ev, "duplicate created event");
            if (retired) sequencing(ev, "created event for an already closed pull request");
            break;
        case EventType::updated:
        case EventType::closed:
            if (retired)
                sequencing(ev, to_string(ev.event_type) +
                                   " event for an already closed pull request");
            if (!known_active)
                sequencing(ev, to_string(ev.event_type) + " event before created");
            if (ev.timestamp < state.active_index.at(ev.pr_id).last_updated)
                sequencing(ev, "timestamp regression within the pull request");
            break;
    }
}

Notification build_notification(const RepositoryState& state, const DetectionResult& result,
                                Instant now, const RepoConfig& config) {
    Notification n;
    n.id = state.repo_id + "-" + std::to_string(state.notifications.size() + 1);
    n.repo_id = state.repo_id;
    n.reference_pr = result.reference_pr;
    n.created_at = now;
    n.emitted = !config.shadow_mode;
    n.interactions = {{"pr_link", 0}, {"file_link", 0}, {"author_link", 0}};
    for (const auto& c : result.candidates) {
        NotificationCandidate nc;
        nc.active_pr = c.active_pr;
        auto it = state.active_index.find(c.active_pr);
        nc.author = it != state.active_index.end() ? it->second.author : "";
        nc.eoo = c.eoo;
        nc.overlap_files.assign(c.overlap_files.begin(), c.overlap_files.end());
        nc.rce_count = c.rce_count;
        n.candidates.push_back(std::move(nc));
    }
    return n;
}

} // namespace

std::vector<Notification> ingest(RepositoryState& state, const PullRequestEvent& event,
                                 const RepoConfig& config, Instant now) {
    if (state.repo_id.empty()) state.repo_id = event.repo_id;
    check_sequencing(state, event);

    state.telemetry.events_processed += 1;

    switch (event.event_type) {
        case EventType::created: {
            ActivePullRequest pr;
            pr.repo_id = event.repo_id;
            pr.pr_id = event.pr_id;
            pr.author = event.author;
            pr.created_at = event.timestamp;
            pr.last_updated = event.timestamp;
            pr.raw_files = event.files;
            pr.filtered_files = filter_allowed(event.files, config);
            pr.interacting_users = event.interacting_users;
            state.active_index.emplace(event.pr_id, std::move(pr));
            break;
        }
        case EventType::updated: {
            ActivePullRequest& pr = state.active_index.at(event.pr_id);
            pr.raw_files = event.files;
            pr.filtered_files = filter_allowed(event.files, config);
            pr.last_updated = event.timestamp;
            pr.interacting_users = event.interacting_users;
            break;
        }
        case EventType::closed: {
            ActivePullRequest& pr = state.active_index.at(event.pr_id);
            if (!event.files.empty()) {
                pr.raw_files = event.files;
                pr.filtered_files = filter_allowed(event.files, config);
            }
            pr.last_updated = event.timestamp;

            PrInterval span;
            span.pr_id = pr.pr_id;
            span.author = pr.author;
            span.created_at = pr.created_at;
            span.closed_at = event.timestamp;
            span.files = pr.filtered_files;
            state.completed_intervals.push_back(std::move(span));

            if (*event.close_reason == CloseReason::merged)
                for (const auto& f : pr.filtered_files)
                    state.tracker.record_merge(f, event.timestamp);

            state.retired_pr_ids.insert(event.pr_id);
            state.active_index.erase(event.pr_id);

            // Housekeeping against monotone time: spans created outside any
            // future RCE window and merge timestamps outside the hot window
            // can never matter again.
            const Instant horizon = now - days(config.rce_window_days);
            std::erase_if(state.completed_intervals,
                          [&](const PrInterval& p) { return p.created_at <= horizon; });
            state.tracker.prune(now);
            return {};
        }
    }

    // Detection runs for the PR this event touched. A stale RCE snapshot is
    // refreshed first: full build the first time, sliding update afterwards.
    if (state.rce_snapshot.window_days == 0) {
        state.rce_snapshot =
            build_rce_list(state.repo_id, interval_history(state, now, config), now, config);
    } else if (needs_refresh(state.rce_snapshot, now, config)) {
        state.rce_snapshot = update_rce_list(state.rce_snapshot,
                                             interval_history(state, now, config), now, config);
    }

    const ActivePullRequest& reference = state.active_index.at(event.pr_id);
    DetectionResult result =
        evaluate(reference, state.active_index, state.rce_snapshot, state.tracker, now, config);
    state.telemetry.evaluations_run += 1;

    if (result.candidates.empty()) return {};
    if (!should_renotify(state.notified_sets_for(event.pr_id), result.candidates)) {
        result.suppressed = true;
        return {};
    }

    Notification n = build_notification(state, result, now, config);
    state.notifications.push_back(n);
    state.telemetry.notifications_emitted += 1;
    return {n};
}

Notification record_feedback(RepositoryState& state, const std::string& notification_id,
                             Feedback verdict) {
    Notification* n = state.find_notification(notification_id);
    if (!n) throw NotFoundError("unknown notification id '" + notification_id + "'");
    const bool legal = n->feedback == verdict || n->feedback == Feedback::active ||
                       verdict == Feedback::active;
    if (!legal)
        throw ValidationError("illegal feedback transition " + to_string(n->feedback) +
                              " -> " + to_string(verdict) + " (resolve via 'active')");
    n->feedback = verdict;
    return *n;
}

std::int64_t record_interaction(RepositoryState& state, const std::string& notification_id,
                                InteractionElement element) {
    Notification* n = state.find_notification(notification_id);
    if (!n) throw NotFoundError("unknown notification id '" + notification_id + "'");
    return ++n->interactions[to_string(element)];
}

} // namespace cone
