#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bgp/arena.hpp"
#include "bgp/solver.hpp"

namespace bgp {

/// The policy's preconditions do not hold for this graph or token count.
class PolicyError : public Error {
 public:
  using Error::Error;
};

/// A policy returned a move that breaks the rules.
class IllegalMoveError : public Error {
 public:
  IllegalMoveError(const std::string& what, std::size_t step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Positional bodyguard strategy over labeled tokens: token i of the input
/// moves to entry i of the output.
class BodyguardPolicy {
 public:
  virtual ~BodyguardPolicy() = default;
  virtual std::string id() const = 0;
  virtual std::size_t tokens() const = 0;
  virtual std::vector<Vertex> initial() const = 0;
  virtual std::vector<Vertex> step(std::span<const Vertex> tokens, Vertex president) const = 0;
};

/// Positional president strategy; sees the bodyguards as a multiset.
class PresidentPolicy {
 public:
  virtual ~PresidentPolicy() = default;
  virtual std::string id() const = 0;
  virtual Vertex place(const Placement& placement) const = 0;
  virtual Vertex step(const Placement& placement, Vertex president) const = 0;
};

// Bodyguard policies. All throw PolicyError when their preconditions fail.

/// k = n - 1: keep every vertex but the president's occupied by shifting
/// tokens along a shortest path toward the free vertex.
std::unique_ptr<BodyguardPolicy> policy_universal(const Graph& g, std::size_t k);

/// Complete multipartite graphs, k = n - (smallest part): occupy every part
/// except the president's.
std::unique_ptr<BodyguardPolicy> policy_multipartite(const Graph& g, std::size_t k);

/// Trees, k = number of leaves: token i starts on leaf i and walks toward the
/// president's neighbor on the path from leaf i.
std::unique_ptr<BodyguardPolicy> policy_tree_bodyguards(const Graph& g, std::size_t k);

/// Cycles in canonical labeling. n <= 5: cover both neighbors whenever a
/// joint move allows it. n > 5: escorts for the two neighbors are taken from
/// tokens close enough on each side; the others close in from both sides.
std::unique_ptr<BodyguardPolicy> policy_cycle_bodyguards(const Graph& g, std::size_t k);

/// Strong products of paths with the given orders (all >= 3), k = 3^d - 1:
/// token j escorts the clamped offset a_j of the president.
std::unique_ptr<BodyguardPolicy> policy_strong_grid(const Graph& g, std::span<const std::size_t> dims,
                                                    std::size_t k);

// President policies.

/// C_n, n >= 6, against 2 tokens: keep cycle distance >= 3 from some token.
std::unique_ptr<PresidentPolicy> evader_cycle(const Graph& g, std::size_t k);

/// Trees against l - 1 tokens: wait at a center; when surrounded, step into
/// a branch holding more leaves than bodyguards.
std::unique_ptr<PresidentPolicy> evader_tree(const Graph& g, std::size_t k);

/// Q_d, d >= 3, against d tokens: whenever a token is at distance 2, flip a
/// coordinate it does not differ in.
std::unique_ptr<PresidentPolicy> evader_hypercube(const Graph& g, std::size_t k);

/// Sits on a maximum-degree vertex forever.
std::unique_ptr<PresidentPolicy> president_stay(const Graph& g);

/// Moves to the closed neighbor with the most unoccupied neighbors.
std::unique_ptr<PresidentPolicy> president_greedy_escape(const Graph& g);

/// Plays best_response_president against a solved region, which must outlive
/// the policy.
std::unique_ptr<PresidentPolicy> president_best_response(const WinRegion& region);

struct PolicyVerdict {
  /// Winning for bodyguard policies, evading for president policies.
  bool holds = false;
  /// On failure: a reachable cycle (first state repeated at the end) that
  /// defeats the policy.
  std::vector<GameState> witness;
  std::size_t states = 0;
  /// Bodyguard policies only: reachable bodyguard-to-move states as multisets.
  std::vector<GameState> bodyguard_states;
};

/// All president starts and replies against a fixed bodyguard policy.
PolicyVerdict verify_policy(const Graph& g, const BodyguardPolicy& policy, SurroundMode mode,
                            std::uint64_t state_limit = kDefaultStateLimit);

/// All placements and joint moves against a fixed president policy.
PolicyVerdict verify_policy(const Graph& g, std::size_t k, const PresidentPolicy& policy, SurroundMode mode,
                            std::uint64_t state_limit = kDefaultStateLimit);

struct Playout {
  enum class End { budget, lasso };

  /// Alternates bodyguard-to-move and president-to-move states, starting
  /// with the state after both placements.
  std::vector<GameState> states;
  /// One flag per bodyguard turn: surrounded after that turn.
  std::vector<bool> surrounded;
  End end = End::budget;
  /// Index in `states` of the first state of the repeated cycle.
  std::size_t lasso_start = 0;

  /// JSON lines, one state per line.
  std::string transcript() const;
};

/// Simulation for at most `max_steps` bodyguard turns. Stops at the first
/// repeated bodyguard-to-move state when `stop_on_repeat` is set, which is
/// only meaningful for positional presidents. Throws IllegalMoveError on a
/// rule-breaking move.
Playout playout(const Graph& g, const BodyguardPolicy& bodyguards, const PresidentPolicy& president,
                std::size_t max_steps, SurroundMode mode = SurroundMode::open, bool stop_on_repeat = true);

}  // namespace bgp
