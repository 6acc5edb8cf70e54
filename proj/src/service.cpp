#include "cone/service.hpp"

#include <algorithm>
#include <chrono>

#include "cone/errors.hpp"

namespace cone {

namespace fs = std::filesystem;

namespace {

Instant wall_clock() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

double percentile(std::vector<double> sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace

TelemetrySummary summarize_telemetry(const Telemetry& t) {
    TelemetrySummary s;
    s.events_processed = t.events_processed;
    s.evaluations_run = t.evaluations_run;
    s.notifications_emitted = t.notifications_emitted;
    s.latency_samples = t.latency_ms.size();
    std::vector<double> sorted = t.latency_ms;
    std::sort(sorted.begin(), sorted.end());
    s.latency_median_ms = percentile(sorted, 0.5);
    s.latency_p99_ms = percentile(std::move(sorted), 0.99);
    return s;
}

ConeService::ConeService(fs::path state_dir, RepoConfig config, int snapshot_every)
    : state_dir_(std::move(state_dir)), config_(std::move(config)),
      snapshot_every_(snapshot_every) {
    fs::create_directories(state_dir_);
    // Restore every repository directory already present.
    for (const auto& entry : fs::directory_iterator(state_dir_)) {
        if (!entry.is_directory()) continue;
        const std::string repo_dir = entry.path().filename().string();
        auto store = std::make_unique<RepoStore>(state_dir_, repo_dir, config_);
        // The snapshot (or first journaled event) knows the unsanitized id.
        const std::string repo_id = store->state().repo_id;
        for (const auto& n : store->state().notifications)
            notification_repo_[n.id] = repo_id;
        Entry e;
        e.mutex = std::make_unique<std::mutex>();
        e.store = std::move(store);
        repos_.emplace(repo_id, std::move(e));
    }
}

ConeService::Entry& ConeService::entry_for(const std::string& repo_id, bool create) {
    std::lock_guard<std::mutex> lock(registry_mutex_);
    auto it = repos_.find(repo_id);
    if (it == repos_.end()) {
        if (!create) throw NotFoundError("unknown repository '" + repo_id + "'");
        Entry e;
        e.mutex = std::make_unique<std::mutex>();
        e.store = std::make_unique<RepoStore>(state_dir_, repo_id, config_);
        it = repos_.emplace(repo_id, std::move(e)).first;
    }
    return it->second;
}

std::vector<Notification> ConeService::ingest(const PullRequestEvent& event,
                                              std::optional<Instant> now) {
    Entry& entry = entry_for(event.repo_id, /*create=*/true);
    std::lock_guard<std::mutex> lock(*entry.mutex);
    auto notes = entry.store->ingest_event(event, now.value_or(wall_clock()));
    if (snapshot_every_ > 0 && ++entry.events_since_snapshot >= snapshot_every_) {
        entry.store->write_snapshot();
        entry.events_since_snapshot = 0;
    }
    if (!notes.empty()) {
        std::lock_guard<std::mutex> reg(registry_mutex_);
        for (const auto& n : notes) notification_repo_[n.id] = event.repo_id;
    }
    return notes;
}

std::string ConeService::repo_of_notification(const std::string& notification_id) {
    std::lock_guard<std::mutex> lock(registry_mutex_);
    auto it = notification_repo_.find(notification_id);
    if (it == notification_repo_.end())
        throw NotFoundError("unknown notification id '" + notification_id + "'");
    return it->second;
}

Notification ConeService::feedback(const std::string& notification_id, Feedback verdict) {
    Entry& entry = entry_for(repo_of_notification(notification_id), /*create=*/false);
    std::lock_guard<std::mutex> lock(*entry.mutex);
    return entry.store->feedback(notification_id, verdict);
}

std::int64_t ConeService::interaction(const std::string& notification_id,
                                      InteractionElement element) {
    Entry& entry = entry_for(repo_of_notification(notification_id), /*create=*/false);
    std::lock_guard<std::mutex> lock(*entry.mutex);
    return entry.store->interaction(notification_id, element);
}

bool ConeService::has_repo(const std::string& repo_id) {
    std::lock_guard<std::mutex> lock(registry_mutex_);
    return repos_.count(repo_id) > 0;
}

std::vector<Notification> ConeService::notifications(const std::string& repo_id,
                                                     std::optional<Instant> since) {
    Entry& entry = entry_for(repo_id, /*create=*/false);
    std::lock_guard<std::mutex> lock(*entry.mutex);
    std::vector<Notification> out;
    for (const auto& n : entry.store->state().notifications)
        if (!since || n.created_at >= *since) out.push_back(n);
    return out;
}

TelemetrySummary ConeService::telemetry(const std::string& repo_id) {
    Entry& entry = entry_for(repo_id, /*create=*/false);
    std::lock_guard<std::mutex> lock(*entry.mutex);
    return summarize_telemetry(entry.store->state().telemetry);
}

void ConeService::snapshot_all() {
    std::vector<std::string> ids = repo_ids();
    for (const auto& id : ids) {
        Entry& entry = entry_for(id, /*create=*/false);
        std::lock_guard<std::mutex> lock(*entry.mutex);
        entry.store->write_snapshot();
    }
}

std::vector<std::string> ConeService::repo_ids() {
    std::lock_guard<std::mutex> lock(registry_mutex_);
    std::vector<std::string> ids;
    for (const auto& [id, _] : repos_) ids.push_back(id);
    return ids;
}

} // namespace cone
