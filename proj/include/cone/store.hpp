#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cone/config.hpp"
#include "cone/repo_state.hpp"

namespace cone {

// Durable home of one repository's state:
//
//   <state_dir>/<repo>/events.jsonl         accepted events, append-only
//   <state_dir>/<repo>/notifications.jsonl  persisted notifications, append-only
//   <state_dir>/<repo>/feedback.jsonl       feedback + interaction ops, append-only
//   <state_dir>/<repo>/snapshot.json        compaction point over the journals
//   <state_dir>/<repo>/rce.json             current RCE snapshot
//
// Opening restores snapshot + journal tail; a corrupt journal line aborts the
// whole restore with an error naming file and line.
class RepoStore {
public:
    RepoStore(std::filesystem::path state_dir, const std::string& repo_id,
              RepoConfig config);

    // Applies, journals, and measures one event. Sequencing/validation
    // failures leave both state and journals untouched.
    std::vector<Notification> ingest_event(const PullRequestEvent& event, Instant now);

    Notification feedback(const std::string& notification_id, Feedback verdict);
    std::int64_t interaction(const std::string& notification_id, InteractionElement element);

    // Compacts the journals into snapshot.json (atomic write).
    void write_snapshot();

    const RepositoryState& state() const { return state_; }
    const std::filesystem::path& dir() const { return dir_; }

    // Directory-safe encoding of a repository id ('/'-free, reversible).
    static std::string sanitize_repo_id(const std::string& repo_id);

private:
    void restore();
    void open_journals();
    void persist_rce_if_changed();

    std::filesystem::path dir_;
    std::string repo_id_;
    RepoConfig config_;
    RepositoryState state_;

    std::ofstream events_out_;
    std::ofstream notifications_out_;
    std::ofstream feedback_out_;

    std::int64_t event_lines_ = 0;          // lines in events.jsonl
    std::int64_t feedback_lines_ = 0;       // lines in feedback.jsonl
    std::int64_t journaled_notifications_ = 0;  // lines in notifications.jsonl
    Instant persisted_rce_built_at_ = -1;
};

} // namespace cone
