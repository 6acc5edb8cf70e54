#pragma once

#include <stdexcept>
#include <string>

namespace cone {

// Malformed input document (bad JSON, bad timestamp syntax).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Well-formed input that violates the schema or a value range.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Event arrived out of order for its pull request (update before create,
// activity after close, timestamp regression).
class SequencingError : public std::runtime_error {
public:
    explicit SequencingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Lookup of a notification id that does not exist.
class NotFoundError : public std::runtime_error {
public:
    explicit NotFoundError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cone
