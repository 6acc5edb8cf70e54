#pragma once

// Seeded corpus generators shared by the unit and acceptance suites.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cone/active_pr.hpp"
#include "cone/config.hpp"
#include "cone/event.hpp"
#include "cone/filters.hpp"
#include "cone/rce.hpp"

namespace testsupport {

using cone::Instant;

inline constexpr Instant kEpoch2020 = 1577836800;  // 2020-01-01T00:00:00Z

inline std::string file_name(std::size_t i) {
    static const char* exts[] = {".cs", ".cpp", ".py", ".js", ".sql", ".ini", ".md"};
    return "src/f" + std::to_string(i) + exts[i % 7];
}

inline std::set<std::string> random_files(std::mt19937_64& rng, std::size_t universe,
                                          std::size_t max_count) {
    std::set<std::string> files;
    const std::size_t count = rng() % (max_count + 1);
    for (std::size_t i = 0; i < count; ++i) files.insert(file_name(rng() % universe));
    return files;
}

// A random active-PR index with tracker entries and an RCE list — the input
// shape detector::evaluate consumes.
struct RandomRepo {
    std::map<std::int64_t, cone::ActivePullRequest> index;
    cone::EditFrequencyTracker tracker;
    cone::RceList rces;
    Instant now = 0;
    cone::RepoConfig config;
};

inline RandomRepo random_repo(std::uint64_t seed, std::size_t max_prs = 50,
                              std::size_t universe = 60) {
    std::mt19937_64 rng(seed);
    RandomRepo repo;
    repo.now = kEpoch2020 + static_cast<Instant>(rng() % (400 * cone::kSecondsPerDay));

    repo.config.eoo_min = static_cast<double>(rng() % 401) / 4.0;
    repo.config.rce_min = 1 + static_cast<int>(rng() % 4);
    repo.config.min_overlap_files = static_cast<int>(rng() % 4);
    repo.config.max_pr_age_days = 10 + static_cast<int>(rng() % 40);
    repo.config.max_files_per_pr = 3 + static_cast<int>(rng() % 20);
    repo.config.hot_file_edit_limit = 2 + static_cast<int>(rng() % 6);
    repo.config.exclude_same_author = rng() % 4 != 0;

    const std::size_t n_prs = 1 + rng() % max_prs;
    const std::size_t n_authors = 2 + rng() % 8;
    for (std::size_t i = 0; i < n_prs; ++i) {
        cone::ActivePullRequest pr;
        pr.repo_id = "gen";
        pr.pr_id = static_cast<std::int64_t>(i + 1);
        pr.author = "dev" + std::to_string(rng() % n_authors);
        pr.created_at = repo.now - static_cast<Instant>(rng() % (60 * cone::kSecondsPerDay));
        pr.last_updated = pr.created_at;
        pr.raw_files = random_files(rng, universe, 25);
        pr.filtered_files = cone::filter_allowed(pr.raw_files, repo.config);
        const std::size_t n_users = rng() % 3;
        for (std::size_t u = 0; u < n_users; ++u)
            pr.interacting_users.insert("dev" + std::to_string(rng() % n_authors));
        repo.index.emplace(pr.pr_id, std::move(pr));
    }

    // Some files get recent merge history; a few become hot.
    const std::size_t n_tracked = rng() % 20;
    for (std::size_t i = 0; i < n_tracked; ++i) {
        const std::string path = file_name(rng() % universe);
        const std::size_t merges = rng() % 10;
        for (std::size_t m = 0; m < merges; ++m)
            repo.tracker.record_merge(
                path, repo.now - static_cast<Instant>(rng() % (45 * cone::kSecondsPerDay)));
    }

    repo.rces.repo_id = "gen";
    repo.rces.built_at = repo.now;
    repo.rces.window_days = repo.config.rce_window_days;
    const std::size_t n_rces = rng() % 25;
    for (std::size_t i = 0; i < n_rces; ++i) repo.rces.files.insert(file_name(rng() % universe));
    return repo;
}

// Random PR interval history for RCE build/update checks.
inline std::vector<cone::PrInterval> random_intervals(std::mt19937_64& rng, Instant lo,
                                                      Instant hi, std::size_t count,
                                                      std::size_t universe) {
    std::vector<cone::PrInterval> history;
    for (std::size_t i = 0; i < count; ++i) {
        cone::PrInterval p;
        p.pr_id = static_cast<std::int64_t>(i + 1);
        p.author = "dev" + std::to_string(rng() % 6);
        const Instant span = static_cast<Instant>(hi - lo);
        p.created_at =
            lo + (span > 0 ? static_cast<Instant>(rng() % static_cast<std::uint64_t>(span)) : 0);
        p.closed_at = p.created_at + static_cast<Instant>(rng() % (20 * cone::kSecondsPerDay));
        p.files = random_files(rng, universe, 8);
        history.push_back(std::move(p));
    }
    return history;
}

// Chronological, sequencing-valid event stream with a steady pool of active
// PRs. target_active controls the steady-state pool size.
struct EventStreamOptions {
    std::size_t n_events = 1000;
    std::size_t target_active = 40;
    std::size_t universe = 120;
    std::size_t n_authors = 12;
    std::size_t max_files = 12;
    std::string repo_id = "corpus";
    Instant start = kEpoch2020;
    Instant step_max = 1800;  // seconds between events
};

inline std::vector<cone::PullRequestEvent> random_event_stream(std::uint64_t seed,
                                                               const EventStreamOptions& opt) {
    std::mt19937_64 rng(seed);
    std::vector<cone::PullRequestEvent> events;
    events.reserve(opt.n_events);

    Instant now = opt.start;
    std::int64_t next_pr = 1;
    std::vector<cone::PullRequestEvent> live;  // last event per live PR

    while (events.size() < opt.n_events) {
        now += 1 + static_cast<Instant>(rng() % opt.step_max);
        const bool spawn = live.size() < 2 || (live.size() < opt.target_active && rng() % 3 != 0);
        if (spawn) {
            cone::PullRequestEvent ev;
            ev.repo_id = opt.repo_id;
            ev.pr_id = next_pr++;
            ev.event_type = cone::EventType::created;
            ev.timestamp = now;
            ev.author = "dev" + std::to_string(rng() % opt.n_authors);
            ev.files = random_files(rng, opt.universe, opt.max_files);
            if (ev.files.empty()) ev.files.insert(file_name(rng() % opt.universe));
            ev.title = "change " + std::to_string(ev.pr_id);
            events.push_back(ev);
            live.push_back(ev);
            continue;
        }
        const std::size_t pick = rng() % live.size();
        cone::PullRequestEvent ev = live[pick];
        ev.timestamp = now;
        const bool close = rng() % 4 == 0;
        if (close) {
            ev.event_type = cone::EventType::closed;
            ev.close_reason =
                rng() % 5 == 0 ? cone::CloseReason::abandoned : cone::CloseReason::merged;
            live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
        } else {
            ev.event_type = cone::EventType::updated;
            ev.close_reason.reset();
            // Drift the cumulative file set.
            auto files = ev.files;
            if (rng() % 2 == 0) files.insert(file_name(rng() % opt.universe));
            if (files.size() > 1 && rng() % 4 == 0) files.erase(files.begin());
            ev.files = files;
            if (rng() % 3 == 0)
                ev.interacting_users.insert("dev" + std::to_string(rng() % opt.n_authors));
            live[pick] = ev;
        }
        events.push_back(ev);
    }
    return events;
}

} // namespace testsupport
