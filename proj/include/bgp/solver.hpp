#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgp/arena.hpp"

namespace bgp {

/// Per-state membership flags, indexed by StateId.
using StateSet = std::vector<std::uint8_t>;

struct SolveOptions {
  SurroundMode mode = SurroundMode::open;
  Method method = Method::exact;
  std::uint64_t state_limit = kDefaultStateLimit;
  std::size_t workers = 1;
  /// Reject k below the degree bound without building an arena.
  bool degree_prune = true;
};

/// Bodyguard winning region for one arena. Holds a pointer to the arena, which
/// must outlive it.
struct WinRegion {
  static constexpr std::uint32_t kUnranked = 0xffffffffu;

  const Arena* arena = nullptr;
  SurroundMode mode = SurroundMode::open;
  Method method = Method::exact;
  StateSet member;
  /// Order in which states joined the region; lower means closer to the core.
  std::vector<std::uint32_t> rank;
  /// 1 + index of the outer iteration whose core a state belongs to, 0 otherwise.
  std::vector<std::uint32_t> core_level;
  /// First rank assigned in each outer iteration.
  std::vector<std::uint32_t> level_start;
  std::size_t iterations = 0;

  bool contains(StateId s) const { return member[s] != 0; }
  bool in_core(StateId s) const { return core_level[s] != 0; }
  std::uint64_t size() const;
};

StateSet safe_set(const Arena& arena, SurroundMode mode);

/// Greatest set inside Safe that the bodyguards can stay in forever.
StateSet eternal_core(const Arena& arena, SurroundMode mode);

/// States from which the bodyguards can force a visit to `target`.
StateSet attractor(const Arena& arena, const StateSet& target);

/// States from which the president can force a visit to `target`.
StateSet president_attractor(const Arena& arena, const StateSet& target);

/// Exact region for Method::exact; attractor of the eternal core for
/// Method::two_phase. Materializes the arena's successor table.
WinRegion cobuchi_region(const Arena& arena, SurroundMode mode, Method method = Method::exact,
                         std::size_t workers = 1);

struct Decision {
  bool win = false;
  std::size_t k = 0;
  /// Lexicographically first placement good against every president start.
  std::optional<Placement> witness;
  /// On a loss: for each placement rank, a president start that escapes.
  std::vector<Vertex> escape;
  /// Decided by the degree bound alone; the president then parks on
  /// `park_vertex`, a vertex of maximum degree.
  bool pruned = false;
  Vertex park_vertex = 0;
  std::uint64_t states = 0;
};

Decision decide(const Graph& g, std::size_t k, const SolveOptions& opts = {});

/// Same verdict as decide() for an already solved region.
Decision decide_from_region(const WinRegion& region);

/// Lowest k worth trying: the degree bound for the mode.
std::size_t bodyguard_lower_bound(const Graph& g, SurroundMode mode);
/// k that always wins: n - 1 in open mode, n in closed mode.
std::size_t bodyguard_upper_bound(const Graph& g, SurroundMode mode);

/// A state limit was hit part way through a bodyguard number search;
/// B lies in [low, high].
class BracketError : public ResourceLimitError {
 public:
  BracketError(const ResourceLimitError& cause, std::size_t low, std::size_t high)
      : ResourceLimitError(cause),
        low_(low),
        high_(high),
        message_(std::string(cause.what()) + "; bodyguard number lies in [" + std::to_string(low) +
                 ", " + std::to_string(high) + "]") {}

  std::size_t low() const { return low_; }
  std::size_t high() const { return high_; }
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  std::size_t low_, high_;
  std::string message_;
};

std::size_t bodyguard_number(const Graph& g, const SolveOptions& opts = {});

/// Memoryless bodyguard strategy restricted to the states reachable from the
/// witness placement. Keys are GameState::key() / Placement::key() strings.
struct StrategyCertificate {
  std::string version = kSolverVersion;
  Graph graph;
  std::string fingerprint;
  std::size_t k = 0;
  SurroundMode mode = SurroundMode::open;
  Method method = Method::exact;
  Placement witness;
  std::vector<std::string> core;  // sorted
  std::map<std::string, std::string> moves;

  nlohmann::ordered_json to_json() const;
  static StrategyCertificate from_json(const nlohmann::json& doc);
};

/// Throws Error when the region has no winning initial placement.
StrategyCertificate extract_strategy(const WinRegion& region);

/// Move prescribed at a bodyguard-to-move state of the region.
PlacementRank strategy_move(const WinRegion& region, StateId s);

struct CertificateCheck {
  bool ok = true;
  std::string reason;
};

/// Re-checks a certificate against the game rules without solving: fingerprint,
/// move legality, closure under every president reply, and that no play under
/// the strategy visits an unsurrounded configuration infinitely often.
CertificateCheck verify_certificate(const StrategyCertificate& cert);

/// President reply at a president-to-move state: leave the region if possible,
/// else go where the bodyguards are furthest from done. Ties to smaller ids.
Vertex best_response_president(const WinRegion& region, StateId s);

/// Whether k cops catch the robber (cops place first, then move first; both
/// may stay; capture when a cop shares the robber's vertex).
bool cops_win(const Graph& g, std::size_t k, std::uint64_t state_limit = kDefaultStateLimit);

std::size_t cop_number(const Graph& g, std::uint64_t state_limit = kDefaultStateLimit);

}  // namespace bgp
