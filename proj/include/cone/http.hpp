#pragma once

#include <memory>
#include <string>

#include "cone/service.hpp"

namespace httplib {
class Server;
}

namespace cone {

// Webhook + query surface:
//   POST /repos/{repo}/events                202 | 400 | 409
//   GET  /repos/{repo}/notifications?since=  200 | 400 | 404
//   POST /notifications/{id}/feedback        200 | 400 | 404
//   POST /notifications/{id}/interactions    200 | 400 | 404
//   GET  /repos/{repo}/telemetry             200 | 404
// The returned server borrows `service`; keep it alive while serving.
std::unique_ptr<httplib::Server> make_http_server(ConeService& service);

// Blocks. `listen` is "host:port".
int run_http_server(ConeService& service, const std::string& listen);

} // namespace cone
