#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bgp {

using Vertex = std::uint32_t;
using StateId = std::uint32_t;
using PlacementRank = std::uint32_t;

inline constexpr std::size_t kMaxVertices = 1u << 16;
inline constexpr std::uint64_t kDefaultStateLimit = 50'000'000;
inline constexpr const char* kSolverVersion = "1.0.0";

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed graph specs and files. `offset` is the byte position
/// of the offending character when the input was a string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_ = 0;
};

/// A computation would exceed a configured state or vertex budget.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(const std::string& what, std::uint64_t requested, std::uint64_t limit)
      : Error(what + ": " + std::to_string(requested) + " exceeds limit " + std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}

  std::uint64_t requested() const { return requested_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

enum class SurroundMode { open, closed };
enum class Method { exact, two_phase };
enum class Turn : std::uint8_t { bodyguards = 0, president = 1 };

const char* to_string(SurroundMode mode);
const char* to_string(Method method);
SurroundMode parse_mode(const std::string& text);
Method parse_method(const std::string& text);

}  // namespace bgp
