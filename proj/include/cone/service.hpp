#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cone/config.hpp"
#include "cone/store.hpp"

namespace cone {

struct TelemetrySummary {
    std::int64_t events_processed = 0;
    std::int64_t evaluations_run = 0;
    std::int64_t notifications_emitted = 0;
    std::size_t latency_samples = 0;
    double latency_median_ms = 0.0;
    double latency_p99_ms = 0.0;
};

// Multi-repository front: one RepoStore per repository, strict serialization
// per repository (per-repo mutex), distinct repositories fully parallel.
// Feedback and interaction writes take the owning repository's lock too.
class ConeService {
public:
    // snapshot_every > 0 compacts a repository's journals after every N
    // accepted events; 0 leaves compaction to explicit snapshot_all() calls.
    ConeService(std::filesystem::path state_dir, RepoConfig config,
                int snapshot_every = 0);

    // Routes to the repository named by the event, creating its store on
    // first contact. `now` defaults to the wall clock; replay passes the
    // event timestamp.
    std::vector<Notification> ingest(const PullRequestEvent& event,
                                     std::optional<Instant> now = std::nullopt);

    Notification feedback(const std::string& notification_id, Feedback verdict);
    std::int64_t interaction(const std::string& notification_id,
                             InteractionElement element);

    bool has_repo(const std::string& repo_id);

    // Notifications with created_at >= since (all when since is absent).
    std::vector<Notification> notifications(const std::string& repo_id,
                                            std::optional<Instant> since = std::nullopt);

    TelemetrySummary telemetry(const std::string& repo_id);

    void snapshot_all();
    std::vector<std::string> repo_ids();

    const RepoConfig& config() const { return config_; }

private:
    struct Entry {
        std::unique_ptr<std::mutex> mutex;
        std::unique_ptr<RepoStore> store;
        std::int64_t events_since_snapshot = 0;
    };

    Entry& entry_for(const std::string& repo_id, bool create);
    std::string repo_of_notification(const std::string& notification_id);

    std::filesystem::path state_dir_;
    RepoConfig config_;
    int snapshot_every_ = 0;
    std::mutex registry_mutex_;
    std::map<std::string, Entry> repos_;
    std::map<std::string, std::string> notification_repo_;  // id -> repo
};

TelemetrySummary summarize_telemetry(const Telemetry& t);

} // namespace cone
