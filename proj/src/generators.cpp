#include "stochmatch/generators.hpp"

#include <cmath>
#include <string>

#include "stochmatch/rng.hpp"

namespace stochmatch {

namespace {

void require_count(int value, int minimum, const char* name) {
  if (value < minimum)
    throw GraphError(ErrorKind::kInvalidArgument,
                     std::string(name) + " must be >= " +
                         std::to_string(minimum) + ", got " +
                         std::to_string(value));
}

}  // namespace

Graph gen_blum_bad_instance(int N) {
  require_count(N, 1, "N");
  const BlumLayout at{N};
  std::vector<EdgeInput> edges;
  edges.reserve(4 * std::size_t(N) * N + 2 * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      edges.push_back({at.a(i), at.b1(j), 1.0});
      edges.push_back({at.a(i), at.b2(j), 1.0});
      edges.push_back({at.d(i), at.c1(j), 1.0});
      edges.push_back({at.d(i), at.c2(j), 1.0});
    }
  for (int i = 0; i < N; ++i) {
    edges.push_back({at.b1(i), at.c1(i), 1.0});
    edges.push_back({at.b2(i), at.c2(i), 1.0});
  }
  return build_graph(edges, 0.5, 6 * N);
}

Graph gen_tightness_instance(int L) {
  require_count(L, 1, "L");
  const TightnessLayout at{L};
  std::vector<EdgeInput> edges;
  edges.reserve(std::size_t(L) * L + 2 * L);
  for (int i = 0; i < L; ++i) {
    edges.push_back({at.a(i), at.b(i), 1.0});
    edges.push_back({at.a_prime(i), at.b_prime(i), 1.0});
    for (int j = 0; j < L; ++j) edges.push_back({at.b(i), at.b_prime(j), 1.0});
  }
  return build_graph(edges, std::sqrt(2.0) - 1.0, 4 * L);
}

Graph gen_weighted_star(int leaves, double heavy_weight, double q_target) {
  require_count(leaves, 0, "leaves");
  if (!(q_target > 0.0 && q_target < 1.0))
    throw GraphError(ErrorKind::kInfeasible,
                     "q_target " + std::to_string(q_target) +
                         " is not attainable; it must lie in (0, 1)");
  std::vector<EdgeInput> edges;
  edges.reserve(std::size_t(leaves) + 1);
  edges.push_back({0, 1, heavy_weight});
  for (int i = 0; i < leaves; ++i) edges.push_back({0, 2 + i, 1.0});
  return build_graph(edges, q_target);
}

Graph gen_random_graph(int n, double density, WeightMode weights, double p,
                       std::uint64_t seed) {
  require_count(n, 2, "n");
  if (!(density > 0.0 && density <= 1.0))
    throw GraphError(ErrorKind::kInvalidArgument,
                     "density must lie in (0, 1]");
  if (weights.kind == WeightMode::Kind::kUniform &&
      !(weights.lo > 0.0 && weights.hi >= weights.lo))
    throw GraphError(ErrorKind::kNonPositiveWeight,
                     "uniform weights need 0 < lo <= hi");
  StreamEngine rng(seed, Domain::kGenerator, 0);
  std::vector<EdgeInput> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double coin = rng.uniform();
      const double draw = rng.uniform();
      if (coin >= density) continue;
      double w = 1.0;
      if (weights.kind == WeightMode::Kind::kUniform)
        w = weights.lo + (weights.hi - weights.lo) * draw;
      edges.push_back({u, v, w});
    }
  return build_graph(edges, p, n);
}

}  // namespace stochmatch
