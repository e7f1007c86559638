// Error hierarchy shared by all qtwtl components.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qtwtl {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the parser; carries the failure position and the token kinds that
// would have been accepted there.
struct SyntaxError : Error {
    SyntaxError(std::string msg, int line_, int col_, std::vector<std::string> expected_)
        : Error(std::move(msg)), line(line_), col(col_), expected(std::move(expected_)) {}
    int line = 0;
    int col = 0;
    std::vector<std::string> expected;
};

// Structurally valid syntax with an impossible meaning (e.g. a window [a,b]
// with b < a).
struct SemanticError : Error {
    using Error::Error;
};

struct NonMonotonicTrace : Error {
    using Error::Error;
};

struct EmptyTraceSet : Error {
    using Error::Error;
};

// Malformed trace input; carries the 1-based line (JSONL) or row (CSV).
struct FormatError : Error {
    FormatError(std::string msg, long line_) : Error(std::move(msg)), line(line_) {}
    long line = 0;
};

struct UnknownParameter : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// A generated artifact violated one of the generator's own constraints.
struct InvariantViolation : Error {
    using Error::Error;
};

} // namespace qtwtl
