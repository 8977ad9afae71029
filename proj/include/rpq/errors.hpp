#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rpq {

/// Malformed textual input: query strings, edge lists.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::string message)
        : std::runtime_error(std::move(message)), position_(npos) {}

    ParseError(std::string message, std::size_t position)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " +
                             std::move(message)),
          position_(position) {}

    static ParseError at_line(std::size_t line, const std::string& message) {
        return ParseError("line " + std::to_string(line) + ": " + message);
    }

    /// Character offset for query-string errors, npos when not applicable.
    std::size_t position() const noexcept { return position_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t position_;
};

/// Structurally invalid automaton file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Instance too large for the dense-matrix reference evaluator.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rpq
