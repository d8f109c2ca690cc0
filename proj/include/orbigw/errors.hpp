#pragma once

#include <stdexcept>
#include <string>

namespace orbigw {

/// A coefficient beyond the tracked truncation window was requested.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Two series whose offsets do not differ by an integer were combined.
struct OffsetGridError : std::runtime_error {
    explicit OffsetGridError(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/// The order-by-order linear solve could not pin all unknowns; retry with a
/// larger buffer.
struct InsufficientBuffer : std::runtime_error {
    explicit InsufficientBuffer(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orbigw
