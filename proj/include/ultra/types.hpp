#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ultra {

// Seconds since the start of the service horizon. No wraparound at midnight.
using Time = std::int32_t;

using Vertex = std::uint32_t;
using StopId = std::uint32_t;  // stops are the first |S| vertices
using TripId = std::uint32_t;
using RouteId = std::uint32_t;

inline constexpr Time kInfinity = std::numeric_limits<Time>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

// Saturating addition: anything plus the sentinel stays the sentinel.
constexpr Time add_time(Time a, Time b) noexcept {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  const std::int64_t sum = std::int64_t{a} + std::int64_t{b};
  return sum >= kInfinity ? kInfinity : static_cast<Time>(sum);
}

constexpr bool is_finite(Time t) noexcept { return t != kInfinity; }

// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when an internal invariant of an engine is found broken.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_time(Time t) {
  return t == kInfinity ? std::string("inf") : std::to_string(t);
}

}  // namespace ultra
