#include "cone/store.hpp"

#include <chrono>
#include <json.hpp>

#include "cone/errors.hpp"
#include "cone/journal.hpp"

namespace cone {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json active_pr_to_json(const ActivePullRequest& pr) {
    json j;
    j["repo_id"] = pr.repo_id;
    j["pr_id"] = pr.pr_id;
    j["author"] = pr.author;
    j["created_at"] = format_instant(pr.created_at);
    j["last_updated"] = format_instant(pr.last_updated);
    j["raw_files"] = pr.raw_files;
    j["filtered_files"] = pr.filtered_files;
    j["status"] = to_string(pr.status);
    j["interacting_users"] = pr.interacting_users;
    return j;
}

ActivePullRequest active_pr_from_json(const json& j) {
    ActivePullRequest pr;
    pr.repo_id = j.at("repo_id").get<std::string>();
    pr.pr_id = j.at("pr_id").get<std::int64_t>();
    pr.author = j.at("author").get<std::string>();
    pr.created_at = parse_instant(j.at("created_at").get<std::string>());
    pr.last_updated = parse_instant(j.at("last_updated").get<std::string>());
    pr.raw_files = j.at("raw_files").get<std::set<std::string>>();
    pr.filtered_files = j.at("filtered_files").get<std::set<std::string>>();
    const std::string status = j.at("status").get<std::string>();
    pr.status = status == "active"   ? PrStatus::active
                : status == "merged" ? PrStatus::merged
                                     : PrStatus::abandoned;
    pr.interacting_users = j.at("interacting_users").get<std::set<std::string>>();
    return pr;
}

json interval_to_json(const PrInterval& p) {
    json j;
    j["pr_id"] = p.pr_id;
    j["author"] = p.author;
    j["created_at"] = format_instant(p.created_at);
    j["closed_at"] = format_instant(p.closed_at);
    j["files"] = p.files;
    return j;
}

PrInterval interval_from_json(const json& j) {
    PrInterval p;
    p.pr_id = j.at("pr_id").get<std::int64_t>();
    p.author = j.at("author").get<std::string>();
    p.created_at = parse_instant(j.at("created_at").get<std::string>());
    p.closed_at = parse_instant(j.at("closed_at").get<std::string>());
    p.files = j.at("files").get<std::set<std::string>>();
    return p;
}

void atomic_write(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out.is_open())
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
    }
    fs::rename(tmp, path);
}

} // namespace

std::string RepoStore::sanitize_repo_id(const std::string& repo_id) {
    // '%' counts as plain so the encoding is idempotent; a directory name can
    // be passed back in to reopen the same store.
    std::string out;
    for (const char c : repo_id) {
        const bool plain = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                           (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' ||
                           c == '%';
        if (plain) {
            out.push_back(c);
        } else {
            static const char* hex = "0123456789abcdef";
            out.push_back('%');
            out.push_back(hex[(static_cast<unsigned char>(c) >> 4) & 0xf]);
            out.push_back(hex[static_cast<unsigned char>(c) & 0xf]);
        }
    }
    return out;
}

RepoStore::RepoStore(fs::path state_dir, const std::string& repo_id, RepoConfig config)
    : dir_(state_dir / sanitize_repo_id(repo_id)), repo_id_(repo_id),
      config_(std::move(config)) {
    fs::create_directories(dir_);
    restore();
    // When reopened via its directory name, the snapshot or journal knows the
    // true repository id; a brand-new store falls back to the given one.
    if (state_.repo_id.empty()) state_.repo_id = repo_id_;
    repo_id_ = state_.repo_id;
    open_journals();
}

void RepoStore::restore() {
    const fs::path snap_path = dir_ / "snapshot.json";
    RepositoryState state;
    std::int64_t events_covered = 0;
    std::int64_t feedback_covered = 0;

    if (fs::exists(snap_path)) {
        std::ifstream in(snap_path);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        json doc;
        try {
            doc = json::parse(text);
            events_covered = doc.at("events_covered").get<std::int64_t>();
            feedback_covered = doc.at("feedback_covered").get<std::int64_t>();
            state.repo_id = doc.at("repo_id").get<std::string>();
            for (const auto& j : doc.at("active")) {
                auto pr = active_pr_from_json(j);
                state.active_index.emplace(pr.pr_id, std::move(pr));
            }
            state.retired_pr_ids =
                doc.at("retired_pr_ids").get<std::set<std::int64_t>>();
            for (const auto& j : doc.at("completed_intervals"))
                state.completed_intervals.push_back(interval_from_json(j));
            for (const auto& [path, stamps] : doc.at("tracker").items())
                for (const auto& ts : stamps)
                    state.tracker.record_merge(path, parse_instant(ts.get<std::string>()));
            state.rce_snapshot = parse_rce_list(doc.at("rce").dump());
            for (const auto& j : doc.at("notifications"))
                state.notifications.push_back(parse_notification(j.dump()));
            const auto& tel = doc.at("telemetry");
            state.telemetry.events_processed = tel.at("events_processed").get<std::int64_t>();
            state.telemetry.evaluations_run = tel.at("evaluations_run").get<std::int64_t>();
            state.telemetry.notifications_emitted =
                tel.at("notifications_emitted").get<std::int64_t>();
        } catch (const json::exception& e) {
            throw ValidationError(snap_path.string() + ": corrupt snapshot: " + e.what());
        }
    }

    // The notifications journal never shrinks below the snapshot's view.
    journaled_notifications_ =
        static_cast<std::int64_t>(read_lines((dir_ / "notifications.jsonl").string()).size());

    // Replay the event journal tail. Event-time replay: each event's own
    // timestamp serves as "now", matching how replay mode ingests.
    const auto event_lines = read_lines((dir_ / "events.jsonl").string());
    if (events_covered > static_cast<std::int64_t>(event_lines.size()))
        throw ValidationError(snap_path.string() +
                              ": snapshot covers more events than the journal holds");
    for (std::size_t i = static_cast<std::size_t>(events_covered); i < event_lines.size();
         ++i) {
        const std::string where =
            (dir_ / "events.jsonl").string() + ":" + std::to_string(i + 1);
        try {
            const PullRequestEvent ev = validate_event(event_lines[i]);
            ingest(state, ev, config_, ev.timestamp);
        } catch (const SequencingError& e) {
            throw ValidationError(where + ": " + e.what());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    event_lines_ = static_cast<std::int64_t>(event_lines.size());

    // Replay the feedback journal tail.
    const auto feedback_ops = read_lines((dir_ / "feedback.jsonl").string());
    if (feedback_covered > static_cast<std::int64_t>(feedback_ops.size()))
        throw ValidationError(snap_path.string() +
                              ": snapshot covers more feedback ops than the journal holds");
    for (std::size_t i = static_cast<std::size_t>(feedback_covered); i < feedback_ops.size();
         ++i) {
        const std::string where =
            (dir_ / "feedback.jsonl").string() + ":" + std::to_string(i + 1);
        try {
            const json op = json::parse(feedback_ops[i]);
            const std::string kind = op.at("op").get<std::string>();
            if (kind == "feedback")
                record_feedback(state, op.at("id").get<std::string>(),
                                parse_feedback(op.at("verdict").get<std::string>()));
            else if (kind == "interaction")
                record_interaction(
                    state, op.at("id").get<std::string>(),
                    parse_interaction_element(op.at("element").get<std::string>()));
            else
                throw ValidationError("unknown journal op '" + kind + "'");
        } catch (const json::exception& e) {
            throw ParseError(where + ": " + e.what());
        } catch (const NotFoundError& e) {
            throw ValidationError(where + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    feedback_lines_ = static_cast<std::int64_t>(feedback_ops.size());

    state_ = std::move(state);
    persisted_rce_built_at_ = -1;
}

void RepoStore::open_journals() {
    events_out_.open(dir_ / "events.jsonl", std::ios::app);
    notifications_out_.open(dir_ / "notifications.jsonl", std::ios::app);
    feedback_out_.open(dir_ / "feedback.jsonl", std::ios::app);
    if (!events_out_.is_open() || !notifications_out_.is_open() || !feedback_out_.is_open())
        throw std::runtime_error("cannot open journals under '" + dir_.string() + "'");
}

void RepoStore::persist_rce_if_changed() {
    if (state_.rce_snapshot.window_days == 0) return;
    if (state_.rce_snapshot.built_at == persisted_rce_built_at_) return;
    atomic_write(dir_ / "rce.json", serialize_rce_list(state_.rce_snapshot));
    persisted_rce_built_at_ = state_.rce_snapshot.built_at;
}

std::vector<Notification> RepoStore::ingest_event(const PullRequestEvent& event,
                                                  Instant now) {
    const auto t0 = std::chrono::steady_clock::now();
    auto notes = ingest(state_, event, config_, now);

    events_out_ << serialize_event(event) << '\n';
    events_out_.flush();
    ++event_lines_;

    const auto total = static_cast<std::int64_t>(state_.notifications.size());
    if (total > journaled_notifications_) {
        for (std::int64_t i = journaled_notifications_; i < total; ++i) {
            notifications_out_ << serialize_notification(
                                      state_.notifications[static_cast<std::size_t>(i)])
                               << '\n';
        }
        notifications_out_.flush();
        journaled_notifications_ = total;
    }
    persist_rce_if_changed();

    const auto t1 = std::chrono::steady_clock::now();
    state_.telemetry.latency_ms.push_back(
        std::chrono::duration<double, std::milli>(t1 - t0).count());
    return notes;
}

Notification RepoStore::feedback(const std::string& notification_id, Feedback verdict) {
    Notification updated = record_feedback(state_, notification_id, verdict);
    json op;
    op["op"] = "feedback";
    op["id"] = notification_id;
    op["verdict"] = to_string(verdict);
    feedback_out_ << op.dump() << '\n';
    feedback_out_.flush();
    ++feedback_lines_;
    return updated;
}

std::int64_t RepoStore::interaction(const std::string& notification_id,
                                    InteractionElement element) {
    const std::int64_t count = record_interaction(state_, notification_id, element);
    json op;
    op["op"] = "interaction";
    op["id"] = notification_id;
    op["element"] = to_string(element);
    feedback_out_ << op.dump() << '\n';
    feedback_out_.flush();
    ++feedback_lines_;
    return count;
}

void RepoStore::write_snapshot() {
    json doc;
    doc["events_covered"] = event_lines_;
    doc["feedback_covered"] = feedback_lines_;
    doc["repo_id"] = state_.repo_id;
    json active = json::array();
    for (const auto& [id, pr] : state_.active_index) active.push_back(active_pr_to_json(pr));
    doc["active"] = std::move(active);
    doc["retired_pr_ids"] = state_.retired_pr_ids;
    json intervals = json::array();
    for (const auto& p : state_.completed_intervals) intervals.push_back(interval_to_json(p));
    doc["completed_intervals"] = std::move(intervals);
    json tracker = json::object();
    for (const auto& [path, stamps] : state_.tracker.merges()) {
        json arr = json::array();
        for (const Instant t : stamps) arr.push_back(format_instant(t));
        tracker[path] = std::move(arr);
    }
    doc["tracker"] = std::move(tracker);
    doc["rce"] = json::parse(serialize_rce_list(state_.rce_snapshot));
    json notes = json::array();
    for (const auto& n : state_.notifications)
        notes.push_back(json::parse(serialize_notification(n)));
    doc["notifications"] = std::move(notes);
    doc["telemetry"] = {{"events_processed", state_.telemetry.events_processed},
                        {"evaluations_run", state_.telemetry.evaluations_run},
                        {"notifications_emitted", state_.telemetry.notifications_emitted}};
    atomic_write(dir_ / "snapshot.json", doc.dump(2));
    persist_rce_if_changed();
}

} // namespace cone
