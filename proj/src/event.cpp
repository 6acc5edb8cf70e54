#include "cone/event.hpp"

#include <json.hpp>

#include "cone/errors.hpp"

namespace cone {

using nlohmann::json;

std::string to_string(EventType t) {
    switch (t) {
        case EventType::created: return "created";
        case EventType::updated: return "updated";
        case EventType::closed: return "closed";
    }
    return "?";
}

std::string to_string(CloseReason r) {
    return r == CloseReason::merged ? "merged" : "abandoned";
}

namespace {

[[noreturn]] void missing(const std::string& field) {
    throw ValidationError("event missing required field '" + field + "'");
}

const json& require(const json& doc, const std::string& field) {
    auto it = doc.find(field);
    if (it == doc.end() || it->is_null()) missing(field);
    return *it;
}

std::string require_string(const json& doc, const std::string& field) {
    const json& v = require(doc, field);
    if (!v.is_string()) throw ValidationError("event field '" + field + "' must be a string");
    return v.get<std::string>();
}

std::set<std::string> string_set(const json& v, const std::string& field) {
    if (!v.is_array())
        throw ValidationError("event field '" + field + "' must be an array of strings");
    std::set<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string())
            throw ValidationError("event field '" + field + "' must be an array of strings");
        out.insert(item.get<std::string>());
    }
    return out;
}

} // namespace

PullRequestEvent validate_event(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("event parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("event must be a JSON object");

    PullRequestEvent ev;
    ev.repo_id = require_string(doc, "repo_id");
    if (ev.repo_id.empty()) throw ValidationError("event field 'repo_id' must be non-empty");

    {
        const json& v = require(doc, "pr_id");
        if (!v.is_number_integer() || v.get<std::int64_t>() <= 0)
            throw ValidationError("event field 'pr_id' must be a positive integer");
        ev.pr_id = v.get<std::int64_t>();
    }

    {
        const std::string t = require_string(doc, "event_type");
        if (t == "created") ev.event_type = EventType::created;
        else if (t == "updated") ev.event_type = EventType::updated;
        else if (t == "closed") ev.event_type = EventType::closed;
        else throw ValidationError("unknown event_type '" + t + "'");
    }

    {
        const std::string ts = require_string(doc, "timestamp");
        try {
            ev.timestamp = parse_instant(ts);
        } catch (const std::invalid_argument&) {
            throw ValidationError("event field 'timestamp' is not a UTC instant: '" + ts + "'");
        }
    }

    ev.author = require_string(doc, "author");

    if (auto it = doc.find("files"); it != doc.end() && !it->is_null()) {
        ev.files = string_set(*it, "files");
    } else if (ev.event_type != EventType::closed) {
        missing("files");
    }

    if (auto it = doc.find("title"); it != doc.end() && !it->is_null()) {
        if (!it->is_string()) throw ValidationError("event field 'title' must be a string");
        ev.title = it->get<std::string>();
    }
    if (auto it = doc.find("commit_messages"); it != doc.end() && !it->is_null()) {
        if (!it->is_array())
            throw ValidationError("event field 'commit_messages' must be an array of strings");
        for (const auto& m : *it) {
            if (!m.is_string())
                throw ValidationError("event field 'commit_messages' must be an array of strings");
            ev.commit_messages.push_back(m.get<std::string>());
        }
    }
    if (auto it = doc.find("interacting_users"); it != doc.end() && !it->is_null())
        ev.interacting_users = string_set(*it, "interacting_users");

    if (auto it = doc.find("close_reason"); it != doc.end() && !it->is_null()) {
        if (!it->is_string())
            throw ValidationError("event field 'close_reason' must be a string");
        const std::string r = it->get<std::string>();
        if (r == "merged") ev.close_reason = CloseReason::merged;
        else if (r == "abandoned") ev.close_reason = CloseReason::abandoned;
        else throw ValidationError("unknown close_reason '" + r + "'");
    }
    if (ev.event_type == EventType::closed && !ev.close_reason)
        missing("close_reason");
    if (ev.event_type != EventType::closed && ev.close_reason)
        throw ValidationError("close_reason only allowed on closed events");

    return ev;
}

std::string serialize_event(const PullRequestEvent& ev) {
    json doc;
    doc["repo_id"] = ev.repo_id;
    doc["pr_id"] = ev.pr_id;
    doc["event_type"] = to_string(ev.event_type);
    doc["timestamp"] = format_instant(ev.timestamp);
    doc["author"] = ev.author;
    doc["files"] = ev.files;
    doc["title"] = ev.title;
    doc["commit_messages"] = ev.commit_messages;
    doc["interacting_users"] = ev.interacting_users;
    if (ev.close_reason) doc["close_reason"] = to_string(*ev.close_reason);
    return doc.dump();
}

} // namespace cone
