#include "cone/journal.hpp"

#include <fstream>

#include "cone/errors.hpp"

namespace cone {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    if (!in.is_open()) return lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<PullRequestEvent> load_events(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw ParseError("cannot open event log '" + path + "'");
    std::vector<PullRequestEvent> events;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            events.push_back(validate_event(line));
        } catch (const ParseError& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return events;
}

} // namespace cone
