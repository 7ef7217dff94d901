#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hcore {

// Base class for everything thrown by this library. Callers that only care
// about "input was bad" vs "bug" can catch this at the boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- indicator errors ------------------------------------------------------

// Area shares are undefined for a profile with zero total citations.
struct ZeroCitations : Error {
    using Error::Error;
};

struct InvalidThresholds : Error {
    using Error::Error;
};

// ---- sRM errors ------------------------------------------------------------

struct EmptyProfile : Error {
    using Error::Error;
};

// b2 == 0: the quadratic segment has no maximum, so the break point is undefined.
struct DegenerateQuadratic : Error {
    using Error::Error;
};

struct TooFewPublications : Error {
    using Error::Error;
};

// No starting point satisfies b2 < 0 with the break point inside (1, k).
struct NoFeasibleSeed : Error {
    using Error::Error;
};

// Normal equations stayed rank-deficient even after damping escalation.
struct SingularJacobian : Error {
    using Error::Error;
};

struct NotConverged : Error {
    using Error::Error;
};

// ---- cohort errors ---------------------------------------------------------

struct InvalidBins : Error {
    using Error::Error;
};

struct UnknownMetric : Error {
    using Error::Error;
};

struct InvalidSpec : Error {
    using Error::Error;
};

// ---- ingest errors ---------------------------------------------------------

// Input errors carry the 1-based line number where the problem was found
// (0 when there is no meaningful line, e.g. structural JSON problems).
struct InputError : Error {
    InputError(const std::string& msg, std::size_t line_no = 0)
        : Error(line_no ? msg + " (line " + std::to_string(line_no) + ")" : msg),
          line(line_no) {}
    std::size_t line;
};

struct MalformedRow : InputError {
    using InputError::InputError;
};

struct NegativeCitations : InputError {
    using InputError::InputError;
};

struct NonIntegerCitations : InputError {
    using InputError::InputError;
};

struct DuplicateKey : InputError {
    using InputError::InputError;
};

// ---- config errors ---------------------------------------------------------

struct InvalidConfig : Error {
    using Error::Error;
};

}  // namespace hcore
