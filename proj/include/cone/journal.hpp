#pragma once

#include <string>
#include <vector>

#include "cone/event.hpp"

namespace cone {

// Raw lines of a JSON-lines file; empty and missing files both yield {}.
std::vector<std::string> read_lines(const std::string& path);

// Parses a whole event log. A bad line raises ParseError/ValidationError
// prefixed with "<path>:<line>:".
std::vector<PullRequestEvent> load_events(const std::string& path);

} // namespace cone
