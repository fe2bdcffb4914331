#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "stochmatch/graph.hpp"

namespace stochmatch {

// Sorted list of edge ids over a graph with `universe` edges. Sparse on
// purpose: realizations at small p touch a tiny fraction of a large graph.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t universe) : universe_(universe) {}

  // `ids` may be unsorted and contain duplicates.
  EdgeSet(std::size_t universe, std::vector<EdgeId> ids);

  static EdgeSet all(std::size_t universe);
  static EdgeSet all(const Graph& g) { return all(g.num_edges()); }
  static EdgeSet from_mask(const std::vector<bool>& mask);

  // Caller guarantees `ids` is strictly increasing and below `universe`.
  static EdgeSet from_sorted(std::size_t universe, std::vector<EdgeId> ids);

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(EdgeId e) const {
    return std::binary_search(ids_.begin(), ids_.end(), e);
  }

  const std::vector<EdgeId>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  std::vector<bool> to_mask() const;

  EdgeSet union_with(const EdgeSet& other) const;
  EdgeSet intersect(const EdgeSet& other) const;
  EdgeSet minus(const EdgeSet& other) const;
  template <class Pred>
  EdgeSet filter(Pred pred) const {
    std::vector<EdgeId> out;
    for (EdgeId e : ids_)
      if (pred(e)) out.push_back(e);
    return from_sorted(universe_, std::move(out));
  }

  // Order-independent 64-bit digest of the member ids.
  std::uint64_t fingerprint() const;

  bool operator==(const EdgeSet&) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<EdgeId> ids_;
};

std::uint64_t fingerprint_ids(std::span<const EdgeId> ids);

}  // namespace stochmatch
