#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bgp/graph.hpp"

namespace bgp {

/// Number of size-k multisets over n symbols, C(n+k-1, k). Saturates at
/// UINT64_MAX instead of overflowing.
std::uint64_t multiset_count(std::uint64_t n, std::uint64_t k);

/// Dense ranking of sorted k-multisets over {0..n-1} in lexicographic order
/// (combinatorial number system). Ranks lie in [0, C(n+k-1, k)).
class MultisetIndexer {
 public:
  MultisetIndexer() = default;
  MultisetIndexer(std::size_t n, std::size_t k);

  std::size_t symbols() const { return n_; }
  std::size_t size() const { return k_; }
  std::uint64_t count() const { return table(k_, n_); }
  /// Multisets of size `k` over `n` symbols, for k <= size(), n <= symbols().
  std::uint64_t count(std::size_t n, std::size_t k) const { return table(k, n); }

  /// Rank of a sorted multiset whose size is at most size(); multisets of
  /// different sizes rank independently. No validation.
  std::uint64_t rank_unchecked(std::span<const Vertex> tokens) const;

  /// Validates sortedness, length and range; throws Error.
  std::uint64_t rank(std::span<const Vertex> tokens) const;
  std::vector<Vertex> unrank(std::uint64_t r) const;
  void unrank_into(std::uint64_t r, std::span<Vertex> out) const;

 private:
  std::uint64_t table(std::size_t k, std::size_t n) const { return counts_[k * (n_ + 1) + n]; }

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::uint64_t> counts_;  // counts_[k][n]
};

std::uint64_t rank_placement(std::span<const Vertex> tokens, std::size_t n);
std::vector<Vertex> unrank_placement(std::uint64_t r, std::size_t n, std::size_t k);

/// Advances a sorted multiset over {0..n-1} to its lexicographic successor.
/// Returns false after the last one.
bool next_multiset(std::span<Vertex> tokens, std::size_t n);

/// Sorted multiset of bodyguard token positions; tokens are indistinguishable.
class Placement {
 public:
  Placement() = default;
  explicit Placement(std::vector<Vertex> tokens);

  std::span<const Vertex> tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool operator==(const Placement&) const = default;
  auto operator<=>(const Placement&) const = default;

  /// "[v1,v2,...]"
  std::string key() const;
  static Placement parse_key(const std::string& text);

 private:
  std::vector<Vertex> tokens_;
};

struct GameState {
  Placement placement;
  Vertex president = 0;
  Turn turn = Turn::bodyguards;

  bool operator==(const GameState&) const = default;

  /// "placement=[v1,v2,...];president=v;turn=B|P"
  std::string key() const;
  static GameState parse_key(const std::string& text);
};

/// Every u in N(president) holds a token; in closed mode the president's own
/// vertex must hold one too. Vacuously true for an isolated president in open mode.
bool surrounded(const Graph& g, std::span<const Vertex> tokens, Vertex president, SurroundMode mode);

/// N[president], sorted.
std::vector<Vertex> president_moves(const Graph& g, Vertex president);

/// Distinct placements reachable in one bodyguard turn (each token moves to a
/// neighbor or stays). Sorted lexicographically.
std::vector<Placement> joint_successors(const Graph& g, const Placement& placement);

/// Whether `from` can be turned into `to` in one bodyguard turn, decided by
/// bipartite matching between tokens.
bool joint_move_feasible(const Graph& g, std::span<const Vertex> from, std::span<const Vertex> to);

/// For each token of `from`, its destination in `to` under some legal
/// assignment; empty when infeasible. Output is indexed like `from`.
std::vector<Vertex> joint_move_assignment(const Graph& g, std::span<const Vertex> from,
                                          std::span<const Vertex> to);

/// Per-placement successor ranks in compressed sparse row form. The joint
/// move relation is symmetric, so each row is also the predecessor list.
struct SuccessorTable {
  std::vector<std::uint64_t> offsets;
  std::vector<PlacementRank> targets;

  std::span<const PlacementRank> row(PlacementRank p) const {
    return {targets.data() + offsets[p], targets.data() + offsets[p + 1]};
  }
  std::size_t transitions() const { return targets.size(); }
};

/// The game graph for a fixed (graph, k): states are (placement, president,
/// side to move) with id ((rank * n) + president) * 2 + turn.
class Arena {
 public:
  Arena(Graph g, std::size_t k, std::uint64_t state_limit = kDefaultStateLimit);

  const Graph& graph() const { return graph_; }
  std::size_t tokens() const { return k_; }
  std::size_t vertices() const { return graph_.order(); }
  std::uint64_t placement_count() const { return placements_; }
  std::uint64_t state_count() const { return placements_ * graph_.order() * 2; }
  const MultisetIndexer& indexer() const { return indexer_; }

  StateId state_id(PlacementRank p, Vertex v, Turn t) const {
    return static_cast<StateId>((std::uint64_t{p} * graph_.order() + v) * 2 + static_cast<unsigned>(t));
  }
  static Turn turn_of(StateId s) { return static_cast<Turn>(s & 1u); }
  Vertex president_of(StateId s) const { return static_cast<Vertex>((s >> 1) % graph_.order()); }
  PlacementRank placement_of(StateId s) const {
    return static_cast<PlacementRank>((s >> 1) / graph_.order());
  }

  GameState state(StateId s) const;
  StateId id(const GameState& state) const;

  PlacementRank rank(std::span<const Vertex> tokens) const;
  std::vector<Vertex> unrank(PlacementRank p) const;

  std::span<const Vertex> closed_neighborhood(Vertex v) const { return closed_[v]; }

  /// Successor ranks of a placement, sorted ascending. Uses the materialized
  /// table when present.
  std::vector<PlacementRank> successors(PlacementRank p) const;

  /// Builds the successor table, splitting placements across `workers`
  /// threads. Throws ResourceLimitError beyond `transition_limit` entries.
  void materialize(std::size_t workers = 1, std::uint64_t transition_limit = 600'000'000) const;
  bool materialized() const { return !table_.offsets.empty(); }
  const SuccessorTable& table() const { return table_; }

  /// Per state: 1 for bodyguard-to-move states and for surrounded
  /// president-to-move states.
  std::vector<std::uint8_t> safe_states(SurroundMode mode) const;

 private:
  Graph graph_;
  std::size_t k_;
  std::uint64_t placements_;
  MultisetIndexer indexer_;
  std::vector<std::vector<Vertex>> closed_;
  mutable SuccessorTable table_;
};

/// Reusable scratch space for successor generation. Not thread safe; use one
/// per worker.
class SuccessorGenerator {
 public:
  explicit SuccessorGenerator(const Arena& arena);

  /// Appends sorted successor ranks of the placement `tokens` to `out`.
  void generate(std::span<const Vertex> tokens, std::vector<PlacementRank>& out);

 private:
  const Arena& arena_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  std::vector<Vertex> current_, next_, scratch_;
};

}  // namespace bgp
