#pragma once

#include <stdexcept>
#include <string>

namespace hydra {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed inputs: out-of-range node ids, invalid partitions, bad handles.
struct ValidationError : Error {
    using Error::Error;
};

// Handles belonging to different universes mixed in one operation.
struct UniverseMismatchError : ValidationError {
    using ValidationError::ValidationError;
};

// A configured resource bound would be exceeded.
struct ResourceError : Error {
    using Error::Error;
};

// Evaluation failures: unbound names, ill-shaped systems.
struct EvalError : Error {
    using Error::Error;
};

// Syntax error with a 1-based source position.
struct ParseError : Error {
    ParseError(const std::string& message, int line, int column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line(line),
          column(column) {}

    int line;
    int column;
};

}  // namespace hydra
