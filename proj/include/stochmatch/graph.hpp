#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stochmatch/errors.hpp"

namespace stochmatch {

using VertexId = std::int32_t;
using EdgeId = std::uint32_t;

struct Edge {
  VertexId u;  // u < v
  VertexId v;
  double w;
  bool operator==(const Edge&) const = default;
};

struct EdgeInput {
  std::int64_t u;
  std::int64_t v;
  double w;
};

// Immutable weighted graph with a global realization probability.
// Edge ids are dense and follow the canonical (u, v) order.
class Graph {
 public:
  Graph() = default;

  int num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  double p() const { return p_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const EdgeId> incident(VertexId v) const {
    return {adjacency_.data() + offsets_[v],
            adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const {
    return offsets_[v + 1] - offsets_[v];
  }
  VertexId other(EdgeId e, VertexId v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }

  double max_weight() const { return max_weight_; }
  bool unit_weights() const { return unit_weights_; }
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

  bool operator==(const Graph& other) const {
    return num_vertices_ == other.num_vertices_ && p_ == other.p_ &&
           edges_ == other.edges_;
  }

 private:
  friend Graph build_graph(const std::vector<EdgeInput>&, double, int);

  int num_vertices_ = 0;
  double p_ = 0.5;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<EdgeId> adjacency_;
  double max_weight_ = 0.0;
  bool unit_weights_ = true;
};

// Canonicalizes endpoints (u < v) and sorts edges. The vertex count is
// max(min_vertices, largest endpoint + 1).
// Throws GraphError on a duplicate edge, self-loop, weight <= 0 (or
// non-finite), negative endpoint, or p outside (0, 1).
Graph build_graph(const std::vector<EdgeInput>& edges, double p,
                  int min_vertices = 0);

}  // namespace stochmatch
