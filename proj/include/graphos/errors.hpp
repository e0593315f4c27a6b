#pragma once

#include <stdexcept>
#include <string>

namespace graphos {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// graph construction / indexing
struct IndexOutOfRange : Error { using Error::Error; };
struct LoopEdge : Error { using Error::Error; };
struct SizeCapExceeded : Error { using Error::Error; };

// linear algebra
struct NotSquare : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };

// parameters
struct DegenerateQuotient : Error { using Error::Error; };
struct NotInducedBipartite : Error { using Error::Error; };

// solver failures surfaced by the wrapper operations
struct SolverFailure : Error { using Error::Error; };

// text formats; line numbers are 1-based
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

}  // namespace graphos
