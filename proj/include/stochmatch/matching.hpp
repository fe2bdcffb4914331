#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "stochmatch/edge_set.hpp"
#include "stochmatch/graph.hpp"

namespace stochmatch {

struct Matching {
  std::vector<EdgeId> edges;  // sorted ids
  double weight = 0.0;

  std::size_t size() const { return edges.size(); }
  bool contains(EdgeId e) const {
    return std::binary_search(edges.begin(), edges.end(), e);
  }
  bool operator==(const Matching&) const = default;
};

using MatchKey = __int128;

// Exact integer objective shared by the blossom solver and the brute-force
// oracle. Each edge weight is quantized to 47 significant bits (or to 1 when
// all weights are equal) and placed above a 32-bit pseudo-random score
// derived from (active set, edge id).
// Maximizing the key sum maximizes weight first and breaks weight ties by
// score, so the optimum is unique and depends only on the active set.
class MatchingKeys {
 public:
  explicit MatchingKeys(const Graph& g);

  std::int64_t quantized_weight(EdgeId e) const { return quantized_[e]; }
  static std::uint64_t score(EdgeId e, std::uint64_t fingerprint);
  MatchKey key(EdgeId e, std::uint64_t fingerprint) const {
    return (MatchKey(quantized_[e]) << kScoreShift) +
           MatchKey(score(e, fingerprint));
  }

  std::int64_t max_quantized() const { return max_quantized_; }

  static constexpr int kWeightBits = 47;
  static constexpr int kScoreShift = 52;

 private:
  std::vector<std::int64_t> quantized_;
  std::int64_t max_quantized_ = 1;
};

template <class Key>
class BlossomMatcher;

// Reusable exact maximum-weight matching solver bound to one graph.
// Not thread-safe; create one per worker.
class MatchingSolver {
 public:
  explicit MatchingSolver(const Graph& g);
  ~MatchingSolver();
  MatchingSolver(MatchingSolver&&) noexcept;
  MatchingSolver& operator=(MatchingSolver&&) = delete;

  Matching solve(const EdgeSet& active) { return solve(active.ids()); }
  // `active` must be sorted and duplicate-free.
  Matching solve(std::span<const EdgeId> active);

  const Graph& graph() const { return *graph_; }
  const MatchingKeys& keys() const { return keys_; }

 private:
  template <class Key>
  void solve_component(BlossomMatcher<Key>& matcher, int begin, int end,
                       const std::vector<std::pair<int, int>>& ends,
                       std::span<const EdgeId> active, std::uint64_t fp,
                       Matching& result);

  const Graph* graph_;
  MatchingKeys keys_;
  std::unique_ptr<BlossomMatcher<std::int64_t>> narrow_;
  std::unique_ptr<BlossomMatcher<MatchKey>> wide_;
  std::vector<std::uint32_t> stamp_;
  std::vector<int> local_;
  std::uint32_t epoch_ = 0;
  // per-call scratch
  std::vector<VertexId> verts_;
  std::vector<int> parent_, comp_of_, comp_edges_begin_, comp_vertex_count_,
      degree_, comp_local_, mate_;
  std::vector<EdgeId> bucketed_;
};

Matching max_weight_matching(const Graph& g, const EdgeSet& active);

constexpr std::size_t kBruteForceEdgeLimit = 24;

// Enumerates every matching of the active edges; the same key objective as
// the solver, with exact key ties broken by the lexicographically smallest
// sorted id sequence. Throws SizeLimitError above kBruteForceEdgeLimit.
Matching brute_force_matching(const Graph& g, const EdgeSet& active);

bool is_matching(const Graph& g, std::span<const EdgeId> edges);
double matching_weight(const Graph& g, std::span<const EdgeId> edges);

}  // namespace stochmatch
