#include "cone/rce.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>

#include "cone/errors.hpp"

namespace cone {

using nlohmann::json;

namespace {

bool spans_overlap(const PrInterval& a, const PrInterval& b) {
    return a.created_at <= b.closed_at && b.created_at <= a.closed_at;
}

std::vector<PrInterval> restrict_to_window(const std::vector<PrInterval>& history,
                                           Instant now, const RepoConfig& config) {
    const Instant lo = now - days(config.rce_window_days);
    std::vector<PrInterval> out;
    for (const auto& p : history)
        if (p.created_at > lo && p.created_at <= now) out.push_back(p);
    return out;
}

} // namespace

std::set<std::string> concurrently_edited_files(const std::vector<PrInterval>& history,
                                                const RepoConfig& config) {
    std::set<std::string> concurrent;
    if (config.rce_pr_level_concurrency) {
        for (std::size_t i = 0; i < history.size(); ++i)
            for (std::size_t j = i + 1; j < history.size(); ++j)
                if (spans_overlap(history[i], history[j])) {
                    concurrent.insert(history[i].files.begin(), history[i].files.end());
                    concurrent.insert(history[j].files.begin(), history[j].files.end());
                }
        return concurrent;
    }
    // File-level: group intervals per file, then look for a pairwise overlap.
    std::map<std::string, std::vector<std::size_t>> by_file;
    for (std::size_t i = 0; i < history.size(); ++i)
        for (const auto& f : history[i].files) by_file[f].push_back(i);
    for (const auto& [file, indices] : by_file) {
        bool found = false;
        for (std::size_t a = 0; a < indices.size() && !found; ++a)
            for (std::size_t b = a + 1; b < indices.size() && !found; ++b)
                if (spans_overlap(history[indices[a]], history[indices[b]])) found = true;
        if (found) concurrent.insert(file);
    }
    return concurrent;
}

RceList build_rce_list(const std::string& repo_id, const std::vector<PrInterval>& history,
                       Instant now, const RepoConfig& config) {
    const auto windowed = restrict_to_window(history, now, config);
    std::set<std::string> edited;
    for (const auto& p : windowed) edited.insert(p.files.begin(), p.files.end());
    const auto concurrent = concurrently_edited_files(windowed, config);

    RceList list;
    list.repo_id = repo_id;
    list.built_at = now;
    list.window_days = config.rce_window_days;
    for (const auto& f : edited)
        if (concurrent.count(f) == 0) list.files.insert(f);
    return list;
}

RceList update_rce_list(const RceList& old, const std::vector<PrInterval>& recent_history,
                        Instant now, const RepoConfig& config) {
    const auto windowed = restrict_to_window(recent_history, now, config);
    std::set<std::string> edited;
    for (const auto& p : windowed) edited.insert(p.files.begin(), p.files.end());
    const auto concurrent = concurrently_edited_files(windowed, config);

    RceList next;
    next.repo_id = old.repo_id;
    next.built_at = now;
    next.window_days = config.rce_window_days;

    // Keep old members still edited in the window and not newly concurrent.
    for (const auto& f : old.files)
        if (edited.count(f) > 0 && concurrent.count(f) == 0) next.files.insert(f);
    // Add isolated files discovered since.
    for (const auto& f : edited)
        if (old.files.count(f) == 0 && concurrent.count(f) == 0) next.files.insert(f);
    return next;
}

int count_rces(const RceList& list, const std::set<std::string>& files) {
    int n = 0;
    for (const auto& f : files)
        if (list.files.count(f) > 0) ++n;
    return n;
}

bool needs_refresh(const RceList& list, Instant now, const RepoConfig& config) {
    return now - list.built_at >= days(config.rce_refresh_days);
}

std::string serialize_rce_list(const RceList& list) {
    json doc;
    doc["repo_id"] = list.repo_id;
    doc["built_at"] = format_instant(list.built_at);
    doc["window_days"] = list.window_days;
    doc["files"] = list.files;
    return doc.dump(2);
}

RceList parse_rce_list(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("rce list parse error: ") + e.what());
    }
    RceList list;
    try {
        list.repo_id = doc.at("repo_id").get<std::string>();
        list.built_at = parse_instant(doc.at("built_at").get<std::string>());
        list.window_days = doc.at("window_days").get<int>();
        for (const auto& f : doc.at("files")) list.files.insert(f.get<std::string>());
    } catch (const json::exception& e) {
        throw ValidationError(std::string("rce list schema error: ") + e.what());
    }
    return list;
}

} // namespace cone
