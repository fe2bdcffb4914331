#include "stochmatch/edge_set.hpp"

#include <numeric>
#include <string>

#include "stochmatch/rng.hpp"

namespace stochmatch {

EdgeSet::EdgeSet(std::size_t universe, std::vector<EdgeId> ids)
    : universe_(universe), ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  if (!ids_.empty() && ids_.back() >= universe_)
    throw Error(ErrorKind::kInvalidArgument,
                "edge id " + std::to_string(ids_.back()) +
                    " out of range for a graph with " +
                    std::to_string(universe_) + " edges");
}

EdgeSet EdgeSet::all(std::size_t universe) {
  std::vector<EdgeId> ids(universe);
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  return from_sorted(universe, std::move(ids));
}

EdgeSet EdgeSet::from_mask(const std::vector<bool>& mask) {
  std::vector<EdgeId> ids;
  for (std::size_t e = 0; e < mask.size(); ++e)
    if (mask[e]) ids.push_back(static_cast<EdgeId>(e));
  return from_sorted(mask.size(), std::move(ids));
}

EdgeSet EdgeSet::from_sorted(std::size_t universe, std::vector<EdgeId> ids) {
  EdgeSet s(universe);
  s.ids_ = std::move(ids);
  return s;
}

std::vector<bool> EdgeSet::to_mask() const {
  std::vector<bool> mask(universe_, false);
  for (EdgeId e : ids_) mask[e] = true;
  return mask;
}

EdgeSet EdgeSet::union_with(const EdgeSet& other) const {
  std::vector<EdgeId> out;
  out.reserve(ids_.size() + other.ids_.size());
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(),
                 other.ids_.end(), std::back_inserter(out));
  return from_sorted(std::max(universe_, other.universe_), std::move(out));
}

EdgeSet EdgeSet::intersect(const EdgeSet& other) const {
  std::vector<EdgeId> out;
  const EdgeSet* small = this;
  const EdgeSet* large = &other;
  if (small->size() > large->size()) std::swap(small, large);
  if (small->size() * 16 < large->size()) {
    for (EdgeId e : small->ids_)
      if (large->contains(e)) out.push_back(e);
    return from_sorted(std::max(universe_, other.universe_), std::move(out));
  }
  std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(),
                        other.ids_.end(), std::back_inserter(out));
  return from_sorted(std::max(universe_, other.universe_), std::move(out));
}

EdgeSet EdgeSet::minus(const EdgeSet& other) const {
  std::vector<EdgeId> out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                      other.ids_.end(), std::back_inserter(out));
  return from_sorted(universe_, std::move(out));
}

std::uint64_t fingerprint_ids(std::span<const EdgeId> ids) {
  std::uint64_t acc = 0x51af2c3e9b7d4e01ull;
  for (EdgeId e : ids) acc += mix64(std::uint64_t{e} + 0x7f4a7c15ull);
  return mix64(acc ^ ids.size());
}

std::uint64_t EdgeSet::fingerprint() const { return fingerprint_ids(ids_); }

}  // namespace stochmatch
