#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace capath {

using Length = std::int64_t;
using Color = int;

// The exact-search machinery was asked to go beyond its configured limits.
// Distinct from a wrong answer: callers can catch this and report "too large".
struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// An invariant the algorithms guarantee was violated. Always a bug, never bad input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace capath
