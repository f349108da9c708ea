#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropint {

struct TropError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpanMismatch : TropError {
    using TropError::TropError;
};

struct EmptyPolyhedron : TropError {
    using TropError::TropError;
};

struct NotAFace : TropError {
    using TropError::TropError;
};

struct SupportNotContained : TropError {
    using TropError::TropError;
};

struct AmbientMismatch : TropError {
    using TropError::TropError;
};

struct NotDependent : TropError {
    using TropError::TropError;
};

struct NotATreeMetric : TropError {
    using TropError::TropError;
};

struct DegreeTooLarge : TropError {
    using TropError::TropError;
};

struct ParseError : TropError {
    ParseError(const std::string& what, size_t position)
        : TropError(what + " at position " + std::to_string(position)), pos(position) {}
    size_t pos;
};

}  // namespace tropint
