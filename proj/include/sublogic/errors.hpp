#pragma once

#include <stdexcept>
#include <string>

namespace sublogic {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument to an operation (arity mismatch, malformed value).
struct ArgumentError : Error {
    using Error::Error;
};

// A configured cap was exceeded (closure arity, closure size, enumeration work).
struct LimitError : Error {
    using Error::Error;
};

// An instance was handed to a solver outside its fragment.
struct FragmentError : Error {
    using Error::Error;
};

// witness_term/change_base target not in the clone.
struct NotExpressibleError : Error {
    using Error::Error;
};

// Cross-checked solvers disagreed. Always a bug signal, never swallowed.
struct DiscrepancyError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_), column(col_) {}
};

} // namespace sublogic
