#include "stochmatch/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stochmatch {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDuplicateEdge: return "duplicate_edge";
    case ErrorKind::kSelfLoop: return "self_loop";
    case ErrorKind::kNonPositiveWeight: return "non_positive_weight";
    case ErrorKind::kProbabilityOutOfRange: return "probability_out_of_range";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kSizeLimit: return "size_limit";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kSelectorMismatch: return "selector_mismatch";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const {
  if (a > b) std::swap(a, b);
  if (a < 0 || b >= num_vertices_) return std::nullopt;
  // Edges are sorted by (u, v), so the block for u = a is contiguous.
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), std::pair{a, b},
      [](const Edge& e, const std::pair<VertexId, VertexId>& key) {
        return std::pair{e.u, e.v} < key;
      });
  if (it == edges_.end() || it->u != a || it->v != b) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

Graph build_graph(const std::vector<EdgeInput>& input, double p,
                  int min_vertices) {
  if (!(p > 0.0 && p < 1.0))
    throw GraphError(ErrorKind::kProbabilityOutOfRange,
                     "realization probability " + std::to_string(p) +
                         " outside (0, 1)");
  if (min_vertices < 0)
    throw GraphError(ErrorKind::kInvalidArgument, "negative vertex count");

  Graph g;
  g.p_ = p;
  g.edges_.reserve(input.size());
  std::int64_t max_vertex = -1;
  for (const EdgeInput& in : input) {
    if (in.u < 0 || in.v < 0 || in.u > INT32_MAX - 1 || in.v > INT32_MAX - 1)
      throw GraphError(ErrorKind::kInvalidArgument,
                       "endpoint out of range in edge (" +
                           std::to_string(in.u) + ", " +
                           std::to_string(in.v) + ")");
    if (in.u == in.v)
      throw GraphError(ErrorKind::kSelfLoop,
                       "self-loop at vertex " + std::to_string(in.u));
    if (!(in.w > 0.0) || !std::isfinite(in.w))
      throw GraphError(ErrorKind::kNonPositiveWeight,
                       "edge (" + std::to_string(in.u) + ", " +
                           std::to_string(in.v) +
                           ") has non-positive weight " + std::to_string(in.w));
    auto a = static_cast<VertexId>(std::min(in.u, in.v));
    auto b = static_cast<VertexId>(std::max(in.u, in.v));
    g.edges_.push_back({a, b, in.w});
    max_vertex = std::max<std::int64_t>(max_vertex, b);
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& x, const Edge& y) {
    return std::pair{x.u, x.v} < std::pair{y.u, y.v};
  });
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i].u == g.edges_[i - 1].u &&
        g.edges_[i].v == g.edges_[i - 1].v)
      throw GraphError(ErrorKind::kDuplicateEdge,
                       "duplicate edge (" + std::to_string(g.edges_[i].u) +
                           ", " + std::to_string(g.edges_[i].v) + ")");
  }
  if (g.edges_.size() > UINT32_MAX)
    throw GraphError(ErrorKind::kInvalidArgument, "too many edges");

  g.num_vertices_ =
      std::max<int>(min_vertices, static_cast<int>(max_vertex + 1));
  const auto n = static_cast<std::size_t>(g.num_vertices_);
  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.adjacency_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    g.adjacency_[fill[e.u]++] = static_cast<EdgeId>(id);
    g.adjacency_[fill[e.v]++] = static_cast<EdgeId>(id);
  }

  g.max_weight_ = 0.0;
  g.unit_weights_ = true;
  for (const Edge& e : g.edges_) {
    g.max_weight_ = std::max(g.max_weight_, e.w);
    if (e.w != 1.0) g.unit_weights_ = false;
  }
  return g;
}

}  // namespace stochmatch
