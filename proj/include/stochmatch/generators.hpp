#pragma once

#include <cstdint>

#include "stochmatch/graph.hpp"

namespace stochmatch {

// Six groups of N vertices laid out consecutively: A, B1, B2, C1, C2, D.
// Complete bipartite (A,B1), (A,B2), (D,C1), (D,C2); perfect matchings
// (B1_i, C1_i) and (B2_i, C2_i); unit weights; p = 1/2.
Graph gen_blum_bad_instance(int N);

struct BlumLayout {
  int N;
  VertexId a(int i) const { return i; }
  VertexId b1(int i) const { return N + i; }
  VertexId b2(int i) const { return 2 * N + i; }
  VertexId c1(int i) const { return 3 * N + i; }
  VertexId c2(int i) const { return 4 * N + i; }
  VertexId d(int i) const { return 5 * N + i; }
};

// Groups A, A', B, B' of L vertices: perfect matchings (A_i,B_i),
// (A'_i,B'_i), complete bipartite (B,B'); unit weights; p = sqrt(2) - 1.
Graph gen_tightness_instance(int L);

struct TightnessLayout {
  int L;
  VertexId a(int i) const { return i; }
  VertexId a_prime(int i) const { return L + i; }
  VertexId b(int i) const { return 2 * L + i; }
  VertexId b_prime(int i) const { return 3 * L + i; }
};

// Star centered at vertex 0: heavy edge (0,1) of weight `heavy_weight`
// and `leaves` unit edges (0, 2..leaves+1). p = q_target; when the heavy
// edge outweighs a leaf it is matched exactly when realized.
Graph gen_weighted_star(int leaves, double heavy_weight = 999.0,
                        double q_target = 0.001);

struct WeightMode {
  enum class Kind { kUnit, kUniform } kind = Kind::kUnit;
  double lo = 1.0;
  double hi = 1.0;
  static WeightMode unit() { return {}; }
  static WeightMode uniform(double lo, double hi) {
    return {Kind::kUniform, lo, hi};
  }
};

// Each pair u < v independently present with probability `density`.
Graph gen_random_graph(int n, double density, WeightMode weights, double p,
                       std::uint64_t seed);

}  // namespace stochmatch
