#pragma once

#include <stdexcept>
#include <string>

namespace lifo {

// Input text could not be parsed. line is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }
private:
    int line_;
};

// A certificate failed structural or semantic validation.
class CertificateError : public std::runtime_error {
public:
    explicit CertificateError(const std::string& msg) : std::runtime_error(msg) {}
};

// A strategy was undefined or produced an illegal move during play.
class StrategyError : public std::runtime_error {
public:
    explicit StrategyError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lifo
