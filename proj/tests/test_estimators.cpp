#include <gtest/gtest.h>

#include <cmath>

#include "stochmatch/estimators.hpp"
#include "stochmatch/generators.hpp"
#include "stochmatch/matching.hpp"

using namespace stochmatch;

namespace {

// Exact per-edge q by enumerating realizations with the brute-force solver.
std::vector<double> enumerate_q(const Graph& g) {
  const std::size_t m = g.num_edges();
  std::vector<double> q(m, 0.0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<EdgeId> ids;
    for (std::size_t e = 0; e < m; ++e)
      if (mask >> e & 1) ids.push_back(static_cast<EdgeId>(e));
    const double prob = std::pow(g.p(), double(ids.size())) *
                        std::pow(1 - g.p(), double(m - ids.size()));
    for (EdgeId e : brute_force_matching(g, EdgeSet(m, ids)).edges)
      q[e] += prob;
  }
  return q;
}

double bernoulli_sigma(double p, double n) { return std::sqrt(p * (1 - p) / n); }

}  // namespace

TEST(Sampling, SingleEdgeFrequency) {
  const Graph g = build_graph({{0, 1, 1.0}}, 0.5);
  const int n = 100000;
  int hits = 0;
  for (int t = 0; t < n; ++t)
    hits += sample_realization(g, CounterStream(4, Domain::kMisc, t)).size();
  EXPECT_NEAR(hits / double(n), 0.5, 3 * bernoulli_sigma(0.5, n));
}

TEST(Sampling, JointFrequency) {
  for (double p : {0.3, 0.02}) {
    const Graph g = build_graph({{0, 1, 1.0}, {2, 3, 1.0}}, p);
    const int n = 200000;
    int both = 0;
    for (int t = 0; t < n; ++t)
      both += sample_realization(g, CounterStream(8, Domain::kMisc, t)).size() == 2;
    EXPECT_NEAR(both / double(n), p * p, 3 * bernoulli_sigma(p * p, n)) << p;
  }
}

TEST(Sampling, SmallPMarginals) {
  // Geometric skipping path: every edge of a long graph keeps rate p.
  const Graph g = gen_weighted_star(999, 2.0, 0.01);
  const int n = 20000;
  std::vector<int> count(g.num_edges(), 0);
  for (int t = 0; t < n; ++t)
    for (EdgeId e : sample_realization(g, CounterStream(1, Domain::kMisc, t)))
      ++count[e];
  double total = 0;
  for (int c : count) total += c;
  const double cells = double(n) * g.num_edges();
  EXPECT_NEAR(total / cells, 0.01, 4 * bernoulli_sigma(0.01, cells));
  EXPECT_NEAR(count[0] / double(n), 0.01, 4 * bernoulli_sigma(0.01, n));
}

TEST(Sampling, Deterministic) {
  const Graph g = gen_random_graph(30, 0.3, WeightMode::unit(), 0.2, 2);
  for (int t = 0; t < 20; ++t) {
    const CounterStream s(77, Domain::kStats, t);
    EXPECT_EQ(sample_realization(g, s), sample_realization(g, s));
  }
}

TEST(Sampling, RestrictionCommutesForLargeP) {
  const Graph g = gen_random_graph(20, 0.5, WeightMode::unit(), 0.4, 2);
  const EdgeSet half = EdgeSet::all(g).filter([](EdgeId e) { return e % 2 == 0; });
  for (int t = 0; t < 50; ++t) {
    const CounterStream s(5, Domain::kStats, t);
    EXPECT_EQ(sample_realization(g, half, s), sample_realization(g, s).intersect(half));
  }
}

TEST(Sampling, AllEdgesMatchesCandidatePath) {
  for (double p : {0.4, 0.01}) {
    const Graph g = gen_weighted_star(3000, 2.0, p);
    std::vector<EdgeId> ids(g.num_edges());
    for (EdgeId e = 0; e < ids.size(); ++e) ids[e] = e;
    for (int t = 0; t < 20; ++t) {
      const CounterStream s(9, Domain::kBuild, t);
      std::vector<EdgeId> a, b;
      sample_edges(g, ids, s, a);
      sample_all_edges(g, s, b);
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Estimates, Summarize) {
  const Estimate e = summarize(6.0, 14.0, 3);  // samples 1, 2, 3
  EXPECT_DOUBLE_EQ(e.mean, 2.0);
  EXPECT_NEAR(e.std_error, std::sqrt(1.0 / 3.0), 1e-12);
  EXPECT_EQ(summarize(4.0, 16.0, 1).std_error, 0.0);
}

TEST(Estimates, SingleEdgeOpt) {
  const Graph g = build_graph({{0, 1, 2.0}}, 0.5);
  const Estimate e = estimate_opt_mc(g, 20000, 3);
  EXPECT_NEAR(e.mean, 1.0, 3 * e.std_error);
  EXPECT_DOUBLE_EQ(exact_expected_matching(g, EdgeSet::all(g)), 1.0);
}

TEST(Estimates, TwoEdgePath) {
  const Graph g = build_graph({{0, 1, 1.0}, {1, 2, 1.0}}, 0.5);
  // Weight 1 unless both edges are absent.
  const double oracle = 1.0 - 0.25;
  EXPECT_DOUBLE_EQ(exact_expected_matching(g, EdgeSet::all(g)), oracle);
  const Estimate e = estimate_opt_mc(g, 20000, 3);
  EXPECT_NEAR(e.mean, oracle, 3 * e.std_error);
}

TEST(Estimates, Triangle) {
  const Graph g = build_graph({{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}, 0.5);
  EXPECT_DOUBLE_EQ(exact_expected_matching(g, EdgeSet::all(g)), 1.0 - 0.125);
}

TEST(Estimates, ExactRespectsRestriction) {
  const Graph g = build_graph({{0, 1, 3.0}, {1, 2, 1.0}}, 0.25);
  EXPECT_DOUBLE_EQ(exact_expected_matching(g, EdgeSet(2, {1})), 0.25);
  EXPECT_DOUBLE_EQ(exact_expected_matching(g, EdgeSet(2)), 0.0);
}

TEST(Estimates, ExactRefusesLargeInputs) {
  const Graph g = gen_random_graph(10, 1.0, WeightMode::unit(), 0.5, 1);
  EXPECT_THROW(exact_expected_matching(g, EdgeSet::all(g)), SizeLimitError);
  EXPECT_THROW(exact_match_probs(g), SizeLimitError);
}

TEST(Estimates, MonteCarloMatchesEnumeration) {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 3; ++seed) {
    const Graph g =
        gen_random_graph(7, 0.55, WeightMode::uniform(1, 3), 0.4, seed);
    if (g.num_edges() > 14u || g.num_edges() < 8u) continue;
    ++checked;
    const double exact = exact_expected_matching(g, EdgeSet::all(g));
    const Estimate e = estimate_opt_mc(g, 1000000, seed);
    EXPECT_NEAR(e.mean, exact, 4 * e.std_error) << seed;
  }
}

TEST(MatchProbs, SingleEdge) {
  const Graph g = build_graph({{0, 1, 1.0}}, 0.3);
  EXPECT_DOUBLE_EQ(exact_match_probs(g).q[0], 0.3);
  const EdgeStats s = estimate_match_probs(g, 20000, 1);
  EXPECT_NEAR(s.q[0], 0.3, 3 * s.std_error[0]);
}

TEST(MatchProbs, ThreeEdgePathMatchesEnumeration) {
  const Graph g = build_graph({{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}, 0.5);
  const EdgeStats s = exact_match_probs(g);
  const std::vector<double> oracle = enumerate_q(g);
  for (EdgeId e = 0; e < 3; ++e) EXPECT_NEAR(s.q[e], oracle[e], 1e-15);
  // Outer edge a: realized, and not beaten by the middle edge. The middle
  // edge wins {a, m} and {m, b} only through the tie-break, so each outer
  // edge lies between the no-tie bounds.
  for (EdgeId e : {0u, 2u}) {
    EXPECT_GE(s.q[e], 0.5 - 0.125 - 1e-15);
    EXPECT_LE(s.q[e], 0.5);
  }
  EXPECT_NEAR(s.q[1], 0.125 + (0.5 - s.q[0]) + (0.5 - s.q[2]), 1e-15);
  EXPECT_NEAR(s.opt.mean, exact_expected_matching(g, EdgeSet::all(g)), 1e-15);
}

TEST(MatchProbs, PerfectMatchingGraph) {
  std::vector<EdgeInput> edges;
  for (int i = 0; i < 10; ++i) edges.push_back({2 * i, 2 * i + 1, 1.0});
  const Graph g = build_graph(edges, 0.35);
  const EdgeStats s = estimate_match_probs(g, 40000, 6);
  for (EdgeId e = 0; e < 10; ++e) EXPECT_NEAR(s.q[e], 0.35, 3.5 * s.std_error[e]);
}

TEST(MatchProbs, MonteCarloAgreesWithExact) {
  const Graph g = gen_random_graph(7, 0.6, WeightMode::uniform(1, 3), 0.5, 11);
  const EdgeStats exact = exact_match_probs(g);
  const EdgeStats mc = estimate_match_probs(g, 200000, 2);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    EXPECT_NEAR(mc.q[e], exact.q[e], 4 * std::max(mc.std_error[e], 1e-4)) << e;
  EXPECT_NEAR(mc.opt.mean, exact.opt.mean, 4 * mc.opt.std_error);
}

TEST(MatchProbs, Invariants) {
  const Graph g = gen_random_graph(40, 0.15, WeightMode::uniform(1, 5), 0.3, 4);
  const EdgeStats s = estimate_match_probs(g, 5000, 4);
  double qw_total = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    EXPECT_GE(s.q[e], 0.0);
    EXPECT_LE(s.q[e], g.p() + 3 * s.std_error[e] + 1e-12);
    EXPECT_DOUBLE_EQ(s.qw[e], s.q[e] * g.edge(e).w);
    qw_total += s.qw[e];
  }
  // Shared trials: the sum equals the OPT estimate up to summation order.
  EXPECT_NEAR(qw_total, s.opt.mean, 1e-9 * s.opt.mean);
  EXPECT_NEAR(s.qw_sum(EdgeSet::all(g)), s.opt.mean, 1e-9 * s.opt.mean);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    double load = 0, var = 0;
    for (EdgeId e : g.incident(v)) {
      load += s.q[e];
      var += s.std_error[e] * s.std_error[e];
    }
    EXPECT_LE(load, 1.0 + 3 * std::sqrt(var) + 1e-12);
  }
}

TEST(MatchProbs, IndependentOfWorkerCount) {
  const Graph g = gen_random_graph(30, 0.2, WeightMode::uniform(1, 5), 0.3, 4);
  const EdgeStats a = estimate_match_probs(g, 1000, 9, 1);
  const EdgeStats b = estimate_match_probs(g, 1000, 9, 3);
  EXPECT_EQ(a.q, b.q);
  EXPECT_EQ(a.opt.mean, b.opt.mean);
  EXPECT_EQ(a.opt.std_error, b.opt.std_error);
}

TEST(MatchProbs, BlumInstanceOpt) {
  const Graph g = gen_blum_bad_instance(50);
  const Estimate e = estimate_opt_mc(g, 200, 1);
  EXPECT_NEAR(e.mean, 150.0, 0.03 * 150.0);
}

TEST(SamplingProb, Formula) {
  EXPECT_DOUBLE_EQ(sampling_prob(0.5, 2), 0.75);
  EXPECT_EQ(sampling_prob(0.3, 0), 0.0);
  EXPECT_EQ(sampling_prob(1.0, 1), 1.0);
  EXPECT_NEAR(sampling_prob(1e-9, 1000), 1e-6, 1e-12);
}
