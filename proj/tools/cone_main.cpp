// cone — concurrent-edit detection service and analysis toolkit.
//
// Subcommands:
//   serve               run the HTTP webhook service
//   replay              feed a JSON-lines event log through the detector
//   rce build           build a rarely-concurrently-edited file list
//   notifications list  dump persisted notifications
//   analyze             bug-induction rates and rank-correlation report

#include <CLI11.hpp>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <httplib.h>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "cone/analysis.hpp"
#include "cone/errors.hpp"
#include "cone/http.hpp"
#include "cone/journal.hpp"
#include "cone/rce.hpp"
#include "cone/service.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// CONE_CONFIG beats the flag; absent both, the built-in defaults apply.
cone::RepoConfig load_config(std::string config_path) {
    if (const char* env = std::getenv("CONE_CONFIG")) config_path = env;
    if (config_path.empty()) return cone::RepoConfig{};
    return cone::parse_config(read_file(config_path));
}

std::string resolve_state_dir(std::string state_dir) {
    if (const char* env = std::getenv("CONE_STATE_DIR")) state_dir = env;
    if (state_dir.empty()) throw std::runtime_error("--state-dir (or CONE_STATE_DIR) required");
    return state_dir;
}

httplib::Server* g_server = nullptr;

int cmd_serve(const std::string& config_path, const std::string& state_dir,
              const std::string& listen, int snapshot_every) {
    cone::ConeService service(resolve_state_dir(state_dir), load_config(config_path),
                              snapshot_every);
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos)
        throw std::runtime_error("--listen expects host:port, got '" + listen + "'");
    auto server = cone::make_http_server(service);
    g_server = server.get();
    std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
    std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
    std::cerr << "listening on " << listen << "\n";
    const bool ok = server->listen(listen.substr(0, colon), std::stoi(listen.substr(colon + 1)));
    g_server = nullptr;
    service.snapshot_all();
    return ok ? 0 : 1;
}

int cmd_replay(const std::string& config_path, const std::string& events_path,
               const std::string& state_dir, bool shadow, int snapshot_every) {
    cone::RepoConfig config = load_config(config_path);
    if (shadow) config.shadow_mode = true;
    cone::ConeService service(resolve_state_dir(state_dir), config);

    const auto events = cone::load_events(events_path);
    std::int64_t emitted = 0;
    std::int64_t processed = 0;
    for (const auto& ev : events) {
        // Event-time replay: the event's own timestamp is "now".
        const auto notes = service.ingest(ev, ev.timestamp);
        emitted += static_cast<std::int64_t>(notes.size());
        ++processed;
        if (snapshot_every > 0 && processed % snapshot_every == 0) service.snapshot_all();
    }
    service.snapshot_all();

    std::cout << "events: " << processed << "\n";
    std::cout << "notifications: " << emitted << (config.shadow_mode ? " (shadow)" : "")
              << "\n";
    for (const auto& repo : service.repo_ids()) {
        const auto t = service.telemetry(repo);
        std::cout << repo << ": evaluations " << t.evaluations_run << ", median latency "
                  << t.latency_median_ms << " ms, p99 " << t.latency_p99_ms << " ms\n";
    }
    return 0;
}

int cmd_rce_build(const std::string& config_path, const std::string& events_path,
                  int window_days, const std::string& at) {
    cone::RepoConfig config = load_config(config_path);
    if (window_days > 0) config.rce_window_days = window_days;

    const auto events = cone::load_events(events_path);
    if (events.empty()) throw std::runtime_error("event log is empty");

    cone::Instant now = 0;
    if (!at.empty()) {
        now = cone::parse_instant(at);
    } else {
        for (const auto& ev : events) now = std::max(now, ev.timestamp);
    }

    // Fold per-repo PR spans: completed ones and those still open at `now`.
    struct Span {
        cone::PrInterval interval;
        bool closed = false;
    };
    std::map<std::string, std::map<std::int64_t, Span>> repos;
    for (const auto& ev : events) {
        if (ev.timestamp > now) continue;
        Span& span = repos[ev.repo_id][ev.pr_id];
        switch (ev.event_type) {
            case cone::EventType::created:
                span.interval.pr_id = ev.pr_id;
                span.interval.author = ev.author;
                span.interval.created_at = ev.timestamp;
                span.interval.files = cone::filter_allowed(ev.files, config);
                break;
            case cone::EventType::updated:
                span.interval.files = cone::filter_allowed(ev.files, config);
                break;
            case cone::EventType::closed:
                if (!ev.files.empty())
                    span.interval.files = cone::filter_allowed(ev.files, config);
                span.interval.closed_at = ev.timestamp;
                span.closed = true;
                break;
        }
    }

    json out = json::object();
    for (auto& [repo_id, spans] : repos) {
        std::vector<cone::PrInterval> history;
        for (auto& [pr_id, span] : spans) {
            if (!span.closed) span.interval.closed_at = now;
            history.push_back(span.interval);
        }
        const auto list = cone::build_rce_list(repo_id, history, now, config);
        out[repo_id] = json::parse(cone::serialize_rce_list(list));
    }
    if (out.size() == 1)
        std::cout << out.begin().value().dump(2) << "\n";
    else
        std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_notifications_list(const std::string& state_dir, const std::string& format) {
    cone::ConeService service(resolve_state_dir(state_dir), cone::RepoConfig{});
    if (format == "json") {
        json out = json::array();
        for (const auto& repo : service.repo_ids())
            for (const auto& n : service.notifications(repo))
                out.push_back(json::parse(cone::serialize_notification(n)));
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    for (const auto& repo : service.repo_ids()) {
        for (const auto& n : service.notifications(repo)) {
            std::cout << n.id << "  " << cone::format_instant(n.created_at) << "  ref PR "
                      << n.reference_pr << "  " << to_string(n.feedback)
                      << (n.emitted ? "" : "  [shadow]") << "\n";
            for (const auto& c : n.candidates) {
                std::cout << "    PR " << c.active_pr << " by " << c.author << ", EOO "
                          << c.eoo << "%, " << c.rce_count << " RCEs, files:";
                for (const auto& f : c.overlap_files) std::cout << " " << f;
                std::cout << "\n";
            }
        }
    }
    return 0;
}

std::vector<int> parse_windows(const std::string& csv) {
    std::vector<int> windows;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        windows.push_back(std::stoi(item));
    }
    if (windows.empty()) throw std::runtime_error("--windows must name at least one day span");
    return windows;
}

int cmd_analyze(const std::string& config_path, const std::string& events_path,
                const std::string& windows_csv, std::int64_t permutations,
                std::uint64_t seed, const std::string& format, bool distinct_files) {
    const cone::RepoConfig config = load_config(config_path);
    const auto windows = parse_windows(windows_csv);
    const auto events = cone::load_events(events_path);
    const auto corpus = cone::build_analysis_corpus(events, config);
    const auto correlations = cone::correlation_report(corpus, permutations, seed);

    std::map<std::string, cone::RatesTable> rates;
    for (const auto& [repo_id, history] : corpus)
        rates[repo_id] = cone::bug_induction_rates(history, windows, distinct_files);

    for (const auto& w : correlations.warnings) std::cerr << "warning: " << w << "\n";

    if (format == "json") {
        json out;
        out["windows_days"] = windows;
        json jrates = json::object();
        for (const auto& [repo_id, table] : rates) {
            json jt;
            jt["concurrent_edits"] = table.concurrent_edits;
            jt["non_concurrent_edits"] = table.non_concurrent_edits;
            jt["concurrent_pct"] = table.concurrent_pct;
            jt["non_concurrent_pct"] = table.non_concurrent_pct;
            jrates[repo_id] = std::move(jt);
        }
        out["bug_induction_rates"] = std::move(jrates);
        json jrows = json::array();
        for (const auto& row : correlations.rows) {
            json jr;
            jr["repo_id"] = row.repo_id;
            jr["n"] = row.n;
            const auto put = [&jr](const char* key, const std::optional<double>& v) {
                if (v) jr[key] = *v;
                else jr[key] = nullptr;
            };
            put("rho_total", row.rho_total);
            put("rho_concurrent", row.rho_concurrent);
            put("rho_non_concurrent", row.rho_non_concurrent);
            put("p_total", row.p_total);
            put("p_concurrent", row.p_concurrent);
            put("p_non_concurrent", row.p_non_concurrent);
            jrows.push_back(std::move(jr));
        }
        out["correlations"] = std::move(jrows);
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (format == "csv") {
        std::cout << "repo,mode";
        for (const int w : windows) std::cout << ",pct_" << w << "d";
        std::cout << "\n";
        for (const auto& [repo_id, table] : rates) {
            std::cout << repo_id << ",concurrent";
            for (const double p : table.concurrent_pct) std::cout << "," << p;
            std::cout << "\n" << repo_id << ",non_concurrent";
            for (const double p : table.non_concurrent_pct) std::cout << "," << p;
            std::cout << "\n";
        }
        std::cout << "\nrepo,n,rho_total,rho_concurrent,rho_non_concurrent,p_total,"
                     "p_concurrent,p_non_concurrent\n";
        for (const auto& row : correlations.rows) {
            const auto cell = [](const std::optional<double>& v) {
                return v ? std::to_string(*v) : std::string();
            };
            std::cout << row.repo_id << "," << row.n << "," << cell(row.rho_total) << ","
                      << cell(row.rho_concurrent) << "," << cell(row.rho_non_concurrent)
                      << "," << cell(row.p_total) << "," << cell(row.p_concurrent) << ","
                      << cell(row.p_non_concurrent) << "\n";
        }
        return 0;
    }

    // table format
    std::cout << "Bug induction rates (% of edits followed by a bug fix)\n";
    for (const auto& [repo_id, table] : rates) {
        std::cout << "  " << repo_id << " (" << table.concurrent_edits << " concurrent, "
                  << table.non_concurrent_edits << " non-concurrent edits)\n";
        if (table.empty()) {
            std::cout << "    (empty corpus)\n";
            continue;
        }
        std::cout << "    window:        ";
        for (const int w : windows) std::printf("%8dd", w);
        std::cout << "\n    concurrent:    ";
        for (const double p : table.concurrent_pct) std::printf("%8.2f%%", p);
        std::cout << "\n    non-concurrent:";
        for (const double p : table.non_concurrent_pct) std::printf("%8.2f%%", p);
        std::cout << "\n";
    }
    std::cout << "\nSpearman rank correlation vs bug fixes (permutation p, seed " << seed
              << ")\n";
    std::printf("%-12s %8s %26s %26s %30s\n", "Repo", "n", "Total Edits to Bug Fixes",
                "Concurrent Edits to Bug Fixes", "Non-Concurrent Edits to Bug Fixes");
    for (const auto& row : correlations.rows) {
        std::printf("%-12s %8lld %26s %26s %30s\n", row.repo_id.c_str(),
                    static_cast<long long>(row.n),
                    cone::format_correlation_value(row.rho_total, row.p_total).c_str(),
                    cone::format_correlation_value(row.rho_concurrent, row.p_concurrent)
                        .c_str(),
                    cone::format_correlation_value(row.rho_non_concurrent,
                                                   row.p_non_concurrent)
                        .c_str());
    }
    std::cout << "*** p<0.001, ** p<0.01, * p<0.05\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ConE: concurrent-edit detection for pull requests"};
    app.require_subcommand(1);

    std::string config_path, state_dir, listen = "127.0.0.1:8125";
    std::string events_path, at, format = "table", windows_csv = "1,7,14,30";
    bool shadow = false, distinct_files = false;
    int window_days = 0, snapshot_every = 1000;
    std::int64_t permutations = 10000;
    std::uint64_t seed = 1;

    auto* serve = app.add_subcommand("serve", "run the HTTP webhook service");
    serve->add_option("--config", config_path, "config file (JSON)");
    serve->add_option("--state-dir", state_dir, "state directory");
    serve->add_option("--listen", listen, "host:port to bind");
    serve->add_option("--snapshot-every", snapshot_every,
                      "compact a repository's journals every N accepted events");

    auto* replay = app.add_subcommand("replay", "replay a JSON-lines event log");
    replay->add_option("--config", config_path, "config file (JSON)");
    replay->add_option("--events", events_path, "event log (.jsonl)")->required();
    replay->add_option("--state-dir", state_dir, "state directory");
    replay->add_flag("--shadow", shadow, "force shadow mode (no emission)");
    replay->add_option("--snapshot-every", snapshot_every,
                       "compact journals every N events (0 = only at the end)");

    auto* rce = app.add_subcommand("rce", "RCE list operations");
    auto* rce_build = rce->add_subcommand("build", "build an RCE list from an event log");
    rce_build->add_option("--events", events_path, "event log (.jsonl)")->required();
    rce_build->add_option("--config", config_path, "config file (JSON)");
    rce_build->add_option("--window-days", window_days, "window override");
    rce_build->add_option("--at", at, "build instant (RFC-3339; default: last event)");

    auto* notifications = app.add_subcommand("notifications", "notification queries");
    auto* notifications_list = notifications->add_subcommand("list", "list notifications");
    notifications_list->add_option("--state-dir", state_dir, "state directory");
    notifications_list->add_option("--format", format, "json|table");

    auto* analyze = app.add_subcommand("analyze", "bug-rate and correlation report");
    analyze->add_option("--events", events_path, "event log (.jsonl)")->required();
    analyze->add_option("--config", config_path, "config file (JSON)");
    analyze->add_option("--windows", windows_csv, "comma-separated day spans");
    analyze->add_option("--permutations", permutations, "permutation test iterations");
    analyze->add_option("--seed", seed, "permutation test seed");
    analyze->add_option("--format", format, "json|csv|table");
    analyze->add_flag("--distinct-files", distinct_files,
                      "rate denominator = distinct files instead of edit events");

    CLI11_PARSE(app, argc, argv);

    try {
        if (serve->parsed())
            return cmd_serve(config_path, state_dir, listen, snapshot_every);
        if (replay->parsed())
            return cmd_replay(config_path, events_path, state_dir, shadow, snapshot_every);
        if (rce->parsed() && rce_build->parsed())
            return cmd_rce_build(config_path, events_path, window_days, at);
        if (notifications->parsed() && notifications_list->parsed())
            return cmd_notifications_list(state_dir, format);
        if (analyze->parsed())
            return cmd_analyze(config_path, events_path, windows_csv, permutations, seed,
                               format, distinct_files);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help();
    return 1;
}
