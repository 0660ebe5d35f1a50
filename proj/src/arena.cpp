#include "bgp/arena.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <thread>

namespace bgp {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

// Kuhn's augmenting path matching; `allowed(i, j)` says token i may take slot j.
template <typename Allowed>
std::vector<int> match_tokens(std::size_t k, Allowed allowed) {
  std::vector<int> slot_owner(k, -1);
  std::vector<char> visited(k);
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j = 0; j < k; ++j) {
      if (visited[j] || !allowed(i, j)) continue;
      visited[j] = 1;
      if (slot_owner[j] < 0 || self(self, static_cast<std::size_t>(slot_owner[j]))) {
        slot_owner[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < k; ++i) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(augment, i)) return {};
  }
  return slot_owner;
}

}  // namespace

std::uint64_t multiset_count(std::uint64_t n, std::uint64_t k) {
  if (k == 0) return 1;
  if (n == 0) return 0;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - 1 + i) / i;
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

MultisetIndexer::MultisetIndexer(std::size_t n, std::size_t k) : n_(n), k_(k) {
  counts_.assign((k + 1) * (n + 1), 0);
  for (std::size_t m = 0; m <= n; ++m) counts_[m] = 1;
  for (std::size_t kk = 1; kk <= k; ++kk) {
    for (std::size_t m = 1; m <= n; ++m) {
      counts_[kk * (n + 1) + m] = saturating_add(table(kk - 1, m), table(kk, m - 1));
    }
  }
}

std::uint64_t MultisetIndexer::rank_unchecked(std::span<const Vertex> tokens) const {
  std::uint64_t result = 0;
  Vertex low = 0;
  std::size_t remaining = tokens.size();
  for (Vertex x : tokens) {
    // Multisets of this size over [low, n) whose smallest element is below x.
    result += table(remaining, n_ - low) - table(remaining, n_ - x);
    low = x;
    --remaining;
  }
  return result;
}

std::uint64_t MultisetIndexer::rank(std::span<const Vertex> tokens) const {
  if (tokens.size() != k_) {
    throw Error("placement has " + std::to_string(tokens.size()) + " tokens, expected " +
                std::to_string(k_));
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] >= n_) throw Error("token position " + std::to_string(tokens[i]) + " out of range");
    if (i > 0 && tokens[i - 1] > tokens[i]) throw Error("placement tokens are not sorted");
  }
  return rank_unchecked(tokens);
}

void MultisetIndexer::unrank_into(std::uint64_t r, std::span<Vertex> out) const {
  const std::size_t k = out.size();
  if (k > k_ || r >= table(k, n_)) {
    throw Error("placement rank " + std::to_string(r) + " out of range");
  }
  Vertex x = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t remaining = k - j;
    for (;;) {
      const std::uint64_t block = table(remaining - 1, n_ - x);
      if (r < block) break;
      r -= block;
      ++x;
    }
    out[j] = x;
  }
}

std::vector<Vertex> MultisetIndexer::unrank(std::uint64_t r) const {
  std::vector<Vertex> out(k_);
  unrank_into(r, out);
  return out;
}

std::uint64_t rank_placement(std::span<const Vertex> tokens, std::size_t n) {
  return MultisetIndexer(n, tokens.size()).rank(tokens);
}

std::vector<Vertex> unrank_placement(std::uint64_t r, std::size_t n, std::size_t k) {
  return MultisetIndexer(n, k).unrank(r);
}

bool next_multiset(std::span<Vertex> tokens, std::size_t n) {
  std::size_t i = tokens.size();
  while (i > 0 && tokens[i - 1] + 1 >= n) --i;
  if (i == 0) return false;
  const Vertex value = tokens[i - 1] + 1;
  std::fill(tokens.begin() + static_cast<std::ptrdiff_t>(i - 1), tokens.end(), value);
  return true;
}

Placement::Placement(std::vector<Vertex> tokens) : tokens_(std::move(tokens)) {
  std::sort(tokens_.begin(), tokens_.end());
}

std::string Placement::key() const {
  std::string out = "[";
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(tokens_[i]);
  }
  return out + "]";
}

Placement Placement::parse_key(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ParseError("placement key must look like [v1,v2,...]: '" + text + "'");
  }
  std::vector<Vertex> tokens;
  std::string body = text.substr(1, text.size() - 2);
  if (!body.empty()) {
    std::stringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("bad vertex id '" + item + "' in placement key");
      }
      tokens.push_back(static_cast<Vertex>(std::stoul(item)));
    }
  }
  Placement p(std::move(tokens));
  if (p.key() != text) throw ParseError("placement key is not canonical: '" + text + "'");
  return p;
}

std::string GameState::key() const {
  return "placement=" + placement.key() + ";president=" + std::to_string(president) +
         ";turn=" + (turn == Turn::bodyguards ? "B" : "P");
}

GameState GameState::parse_key(const std::string& text) {
  const std::string p1 = "placement=", p2 = ";president=", p3 = ";turn=";
  const auto a = text.find(p2), b = text.find(p3);
  if (text.rfind(p1, 0) != 0 || a == std::string::npos || b == std::string::npos || b < a) {
    throw ParseError("malformed state key '" + text + "'");
  }
  GameState s;
  s.placement = Placement::parse_key(text.substr(p1.size(), a - p1.size()));
  const std::string pres = text.substr(a + p2.size(), b - a - p2.size());
  if (pres.empty() || pres.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("malformed president in state key '" + text + "'");
  }
  s.president = static_cast<Vertex>(std::stoul(pres));
  const std::string turn = text.substr(b + p3.size());
  if (turn == "B") {
    s.turn = Turn::bodyguards;
  } else if (turn == "P") {
    s.turn = Turn::president;
  } else {
    throw ParseError("malformed turn in state key '" + text + "'");
  }
  return s;
}

bool surrounded(const Graph& g, std::span<const Vertex> tokens, Vertex president, SurroundMode mode) {
  auto occupied = [&](Vertex u) { return std::binary_search(tokens.begin(), tokens.end(), u); };
  if (mode == SurroundMode::closed && !occupied(president)) return false;
  for (Vertex u : g.neighbors(president)) {
    if (!occupied(u)) return false;
  }
  return true;
}

std::vector<Vertex> president_moves(const Graph& g, Vertex president) {
  std::vector<Vertex> out(g.neighbors(president).begin(), g.neighbors(president).end());
  out.insert(std::lower_bound(out.begin(), out.end(), president), president);
  return out;
}

std::vector<Placement> joint_successors(const Graph& g, const Placement& placement) {
  Arena arena(g, placement.size(), std::numeric_limits<std::uint32_t>::max());
  arena.rank(placement.tokens());
  SuccessorGenerator gen(arena);
  std::vector<PlacementRank> ranks;
  gen.generate(placement.tokens(), ranks);
  std::vector<Placement> out;
  out.reserve(ranks.size());
  for (PlacementRank r : ranks) out.emplace_back(arena.unrank(r));
  return out;
}

std::vector<Vertex> joint_move_assignment(const Graph& g, std::span<const Vertex> from,
                                          std::span<const Vertex> to) {
  if (from.size() != to.size()) throw Error("joint move between placements of different sizes");
  auto slot_owner = match_tokens(from.size(), [&](std::size_t i, std::size_t j) {
    return from[i] == to[j] || g.adjacent(from[i], to[j]);
  });
  if (slot_owner.empty() && !from.empty()) return {};
  std::vector<Vertex> dest(from.size());
  for (std::size_t j = 0; j < to.size(); ++j) dest[static_cast<std::size_t>(slot_owner[j])] = to[j];
  return dest;
}

bool joint_move_feasible(const Graph& g, std::span<const Vertex> from, std::span<const Vertex> to) {
  if (from.size() != to.size()) return false;
  if (from.empty()) return true;
  return !joint_move_assignment(g, from, to).empty();
}

Arena::Arena(Graph g, std::size_t k, std::uint64_t state_limit)
    : graph_(std::move(g)), k_(k), placements_(multiset_count(graph_.order(), k)) {
  const std::uint64_t n = graph_.order();
  const std::uint64_t limit = std::min<std::uint64_t>(state_limit, std::numeric_limits<StateId>::max());
  const unsigned __int128 wide = static_cast<unsigned __int128>(placements_) * n * 2;
  const std::uint64_t states = wide > kSaturated ? kSaturated : static_cast<std::uint64_t>(wide);
  if (states > limit) throw ResourceLimitError("arena state count", states, limit);
  indexer_ = MultisetIndexer(graph_.order(), k);
  closed_.resize(graph_.order());
  for (Vertex v = 0; v < graph_.order(); ++v) closed_[v] = president_moves(graph_, v);
}

GameState Arena::state(StateId s) const {
  return GameState{Placement(unrank(placement_of(s))), president_of(s), turn_of(s)};
}

StateId Arena::id(const GameState& state) const {
  if (state.president >= vertices()) throw Error("president vertex out of range");
  return state_id(rank(state.placement.tokens()), state.president, state.turn);
}

PlacementRank Arena::rank(std::span<const Vertex> tokens) const {
  return static_cast<PlacementRank>(indexer_.rank(tokens));
}

std::vector<Vertex> Arena::unrank(PlacementRank p) const { return indexer_.unrank(p); }

std::vector<PlacementRank> Arena::successors(PlacementRank p) const {
  if (materialized()) {
    auto row = table_.row(p);
    return {row.begin(), row.end()};
  }
  SuccessorGenerator gen(*this);
  std::vector<PlacementRank> out;
  gen.generate(unrank(p), out);
  return out;
}

void Arena::materialize(std::size_t workers, std::uint64_t transition_limit) const {
  if (materialized()) return;
  const std::uint64_t count = placements_;
  // Small tables are not worth a thread each.
  workers = std::max<std::size_t>(1, std::min<std::uint64_t>(workers, count / 512));
  struct Chunk {
    std::vector<std::uint64_t> row_sizes;
    std::vector<PlacementRank> targets;
  };
  std::vector<Chunk> chunks(workers);
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](std::size_t w) {
    try {
      const std::uint64_t begin = count * w / workers, end = count * (w + 1) / workers;
      if (begin >= end) return;
      SuccessorGenerator gen(*this);
      std::vector<Vertex> tokens = unrank(static_cast<PlacementRank>(begin));
      Chunk& chunk = chunks[w];
      for (std::uint64_t p = begin; p < end; ++p) {
        const std::size_t before = chunk.targets.size();
        gen.generate(tokens, chunk.targets);
        chunk.row_sizes.push_back(chunk.targets.size() - before);
        if (chunk.targets.size() * workers > transition_limit) {
          throw ResourceLimitError("successor table entries", chunk.targets.size() * workers,
                                   transition_limit);
        }
        next_multiset(tokens, vertices());
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::uint64_t total = 0;
  for (const auto& c : chunks) total += c.targets.size();
  if (total > transition_limit) throw ResourceLimitError("successor table entries", total, transition_limit);
  table_.offsets.reserve(count + 1);
  table_.offsets.push_back(0);
  table_.targets.reserve(total);
  for (auto& c : chunks) {
    for (std::uint64_t size : c.row_sizes) table_.offsets.push_back(table_.offsets.back() + size);
    table_.targets.insert(table_.targets.end(), c.targets.begin(), c.targets.end());
    c = Chunk{};
  }
}

std::vector<std::uint8_t> Arena::safe_states(SurroundMode mode) const {
  std::vector<std::uint8_t> safe(state_count(), 0);
  const std::size_t n = vertices();
  if (n == 0) return safe;
  std::vector<Vertex> tokens(k_, 0);
  std::vector<std::uint8_t> occupied(n);
  for (std::uint64_t p = 0; p < placements_; ++p) {
    std::fill(occupied.begin(), occupied.end(), 0);
    for (Vertex t : tokens) occupied[t] = 1;
    for (Vertex v = 0; v < n; ++v) {
      bool ok = mode == SurroundMode::open || occupied[v];
      for (Vertex u : graph_.neighbors(v)) {
        if (!ok) break;
        ok = occupied[u];
      }
      const auto pr = static_cast<PlacementRank>(p);
      safe[state_id(pr, v, Turn::bodyguards)] = 1;
      safe[state_id(pr, v, Turn::president)] = ok ? 1 : 0;
    }
    next_multiset(tokens, n);
  }
  return safe;
}

SuccessorGenerator::SuccessorGenerator(const Arena& arena)
    : arena_(arena), stamp_(std::max<std::uint64_t>(1, arena.placement_count()), 0) {}

void SuccessorGenerator::generate(std::span<const Vertex> tokens, std::vector<PlacementRank>& out) {
  const std::size_t k = tokens.size();
  if (k == 0) {
    out.push_back(0);
    return;
  }
  const MultisetIndexer& indexer = arena_.indexer();
  current_.clear();
  std::size_t current_count = 1;  // one empty partial multiset
  const std::size_t first_out = out.size();

  for (std::size_t level = 1; level <= k; ++level) {
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
    next_.clear();
    scratch_.resize(level);
    const std::size_t prev = level - 1;
    std::size_t next_count = 0;
    for (std::size_t m = 0; m < current_count; ++m) {
      const Vertex* partial = current_.data() + m * prev;
      for (Vertex w : arena_.closed_neighborhood(tokens[level - 1])) {
        std::size_t i = 0, o = 0;
        while (i < prev && partial[i] <= w) scratch_[o++] = partial[i++];
        scratch_[o++] = w;
        while (i < prev) scratch_[o++] = partial[i++];
        const auto r = static_cast<std::size_t>(indexer.rank_unchecked(scratch_));
        if (stamp_[r] == generation_) continue;
        stamp_[r] = generation_;
        if (level == k) {
          out.push_back(static_cast<PlacementRank>(r));
        } else {
          next_.insert(next_.end(), scratch_.begin(), scratch_.end());
        }
        ++next_count;
      }
    }
    std::swap(current_, next_);
    current_count = next_count;
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(first_out), out.end());
}

}  // namespace bgp
