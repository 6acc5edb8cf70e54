#include "cone/notification.hpp"

#include <json.hpp>

#include "cone/errors.hpp"

namespace cone {

using nlohmann::json;

std::string to_string(Feedback f) {
    switch (f) {
        case Feedback::active: return "active";
        case Feedback::resolved: return "resolved";
        case Feedback::wont_fix: return "wont_fix";
    }
    return "?";
}

std::string to_string(InteractionElement e) {
    switch (e) {
        case InteractionElement::pr_link: return "pr_link";
        case InteractionElement::file_link: return "file_link";
        case InteractionElement::author_link: return "author_link";
    }
    return "?";
}

Feedback parse_feedback(const std::string& s) {
    if (s == "active") return Feedback::active;
    if (s == "resolved") return Feedback::resolved;
    if (s == "wont_fix") return Feedback::wont_fix;
    throw ValidationError("unknown feedback verdict '" + s + "'");
}

InteractionElement parse_interaction_element(const std::string& s) {
    if (s == "pr_link") return InteractionElement::pr_link;
    if (s == "file_link") return InteractionElement::file_link;
    if (s == "author_link") return InteractionElement::author_link;
    throw ValidationError("unknown interaction element '" + s + "'");
}

std::set<std::int64_t> Notification::candidate_pr_ids() const {
    std::set<std::int64_t> ids;
    for (const auto& c : candidates) ids.insert(c.active_pr);
    return ids;
}

std::string serialize_notification(const Notification& n) {
    json doc;
    doc["id"] = n.id;
    doc["repo_id"] = n.repo_id;
    doc["reference_pr"] = n.reference_pr;
    doc["created_at"] = format_instant(n.created_at);
    doc["feedback"] = to_string(n.feedback);
    doc["emitted"] = n.emitted;
    doc["interactions"] = n.interactions;
    json cands = json::array();
    for (const auto& c : n.candidates) {
        json jc;
        jc["active_pr"] = c.active_pr;
        jc["author"] = c.author;
        jc["eoo"] = c.eoo;
        jc["overlap_files"] = c.overlap_files;
        jc["rce_count"] = c.rce_count;
        cands.push_back(std::move(jc));
    }
    doc["candidates"] = std::move(cands);
    return doc.dump();
}

Notification parse_notification(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("notification parse error: ") + e.what());
    }
    Notification n;
    try {
        n.id = doc.at("id").get<std::string>();
        n.repo_id = doc.at("repo_id").get<std::string>();
        n.reference_pr = doc.at("reference_pr").get<std::int64_t>();
        n.created_at = parse_instant(doc.at("created_at").get<std::string>());
        n.feedback = parse_feedback(doc.at("feedback").get<std::string>());
        n.emitted = doc.at("emitted").get<bool>();
        n.interactions = doc.at("interactions").get<std::map<std::string, std::int64_t>>();
        for (const auto& jc : doc.at("candidates")) {
            NotificationCandidate c;
            c.active_pr = jc.at("active_pr").get<std::int64_t>();
            c.author = jc.at("author").get<std::string>();
            c.eoo = jc.at("eoo").get<double>();
            c.overlap_files = jc.at("overlap_files").get<std::vector<std::string>>();
            c.rce_count = jc.at("rce_count").get<int>();
            n.candidates.push_back(std::move(c));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("notification schema error: ") + e.what());
    }
    return n;
}

} // namespace cone
