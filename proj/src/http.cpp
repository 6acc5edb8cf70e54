#include "cone/http.hpp"

#include <cctype>
#include <httplib.h>
#include <json.hpp>

#include "cone/errors.hpp"
#include "cone/event.hpp"

namespace cone {

using nlohmann::json;

namespace {

std::string url_decode(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size() && std::isxdigit((unsigned char)s[i + 1]) &&
            std::isxdigit((unsigned char)s[i + 2])) {
            out.push_back(static_cast<char>(std::stoi(s.substr(i + 1, 2), nullptr, 16)));
            i += 2;
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
    json body;
    body["error"] = message;
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

json notification_json(const Notification& n) {
    return json::parse(serialize_notification(n));
}

} // namespace

std::unique_ptr<httplib::Server> make_http_server(ConeService& service) {
    auto server = std::make_unique<httplib::Server>();

    server->Post(R"(/repos/([^/]+)/events)", [&service](const httplib::Request& req,
                                                        httplib::Response& res) {
        const std::string repo_id = url_decode(req.matches[1]);
        try {
            const PullRequestEvent event = validate_event(req.body);
            if (event.repo_id != repo_id) {
                reply_error(res, 400,
                            "event repo_id '" + event.repo_id +
                                "' does not match the endpoint repository '" + repo_id + "'");
                return;
            }
            const auto notes = service.ingest(event);
            json body;
            body["accepted"] = true;
            json emitted = json::array();
            for (const auto& n : notes) emitted.push_back(notification_json(n));
            body["notifications"] = std::move(emitted);
            res.status = 202;
            res.set_content(body.dump(), "application/json");
        } catch (const SequencingError& e) {
            reply_error(res, 409, e.what());
        } catch (const ParseError& e) {
            reply_error(res, 400, e.what());
        } catch (const ValidationError& e) {
            reply_error(res, 400, e.what());
        }
    });

    server->Get(R"(/repos/([^/]+)/notifications)", [&service](const httplib::Request& req,
                                                              httplib::Response& res) {
        const std::string repo_id = url_decode(req.matches[1]);
        std::optional<Instant> since;
        if (req.has_param("since")) {
            try {
                since = parse_instant(req.get_param_value("since"));
            } catch (const std::invalid_argument& e) {
                reply_error(res, 400, e.what());
                return;
            }
        }
        try {
            const auto notes = service.notifications(repo_id, since);
            json body = json::array();
            for (const auto& n : notes) body.push_back(notification_json(n));
            res.status = 200;
            res.set_content(body.dump(), "application/json");
        } catch (const NotFoundError& e) {
            reply_error(res, 404, e.what());
        }
    });

    server->Post(R"(/notifications/([^/]+)/feedback)", [&service](const httplib::Request& req,
                                                                  httplib::Response& res) {
        const std::string id = url_decode(req.matches[1]);
        try {
            const json body = json::parse(req.body);
            const Feedback verdict = parse_feedback(body.at("verdict").get<std::string>());
            const Notification updated = service.feedback(id, verdict);
            res.status = 200;
            res.set_content(notification_json(updated).dump(), "application/json");
        } catch (const json::exception& e) {
            reply_error(res, 400, std::string("bad feedback body: ") + e.what());
        } catch (const NotFoundError& e) {
            reply_error(res, 404, e.what());
        } catch (const ValidationError& e) {
            reply_error(res, 400, e.what());
        }
    });

    server->Post(R"(/notifications/([^/]+)/interactions)",
                 [&service](const httplib::Request& req, httplib::Response& res) {
                     const std::string id = url_decode(req.matches[1]);
                     try {
                         const json body = json::parse(req.body);
                         const InteractionElement element =
                             parse_interaction_element(body.at("element").get<std::string>());
                         const std::int64_t count = service.interaction(id, element);
                         json out;
                         out["element"] = to_string(element);
                         out["count"] = count;
                         res.status = 200;
                         res.set_content(out.dump(), "application/json");
                     } catch (const json::exception& e) {
                         reply_error(res, 400, std::string("bad interaction body: ") + e.what());
                     } catch (const NotFoundError& e) {
                         reply_error(res, 404, e.what());
                     } catch (const ValidationError& e) {
                         reply_error(res, 400, e.what());
                     }
                 });

    server->Get(R"(/repos/([^/]+)/telemetry)", [&service](const httplib::Request& req,
                                                           httplib::Response& res) {
        const std::string repo_id = url_decode(req.matches[1]);
        try {
            const TelemetrySummary t = service.telemetry(repo_id);
            json body;
            body["events_processed"] = t.events_processed;
            body["evaluations_run"] = t.evaluations_run;
            body["notifications_emitted"] = t.notifications_emitted;
            body["latency_ms"] = {{"median", t.latency_median_ms},
                                  {"p99", t.latency_p99_ms},
                                  {"samples", t.latency_samples}};
            res.status = 200;
            res.set_content(body.dump(), "application/json");
        } catch (const NotFoundError& e) {
            reply_error(res, 404, e.what());
        }
    });

    return server;
}

int run_http_server(ConeService& service, const std::string& listen) {
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--listen expects host:port, got '" + listen + "'");
    const std::string host = listen.substr(0, colon);
    const int port = std::stoi(listen.substr(colon + 1));
    auto server = make_http_server(service);
    if (!server->listen(host, port)) return 1;
    return 0;
}

} // namespace cone
