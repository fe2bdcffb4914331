#include <gtest/gtest.h>

#include <cmath>

#include "stochmatch/fractional.hpp"
#include "stochmatch/generators.hpp"
#include "stochmatch/rng.hpp"

using namespace stochmatch;

namespace {

const double kSqrt2 = std::sqrt(2.0);

EdgeStats stats_from_q(const Graph& g, std::vector<double> q) {
  EdgeStats s;
  s.q = std::move(q);
  for (EdgeId e = 0; e < g.num_edges(); ++e) s.qw.push_back(s.q[e] * g.edge(e).w);
  s.std_error.assign(g.num_edges(), 0.0);
  return s;
}

VertexBudgets budgets(std::size_t n) {
  VertexBudgets b;
  for (auto* v : {&b.qN, &b.qwN, &b.qC, &b.qwC, &b.qCminus, &b.qwCminus})
    v->assign(n, 0.0);
  return b;
}

QuerySet query_all(const Graph& g, std::uint64_t rounds,
                   std::vector<std::uint32_t> picks) {
  QuerySet qs;
  qs.rounds = rounds;
  qs.picks = std::move(picks);
  std::vector<EdgeId> ids;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (qs.picks[e] > 0) ids.push_back(e);
  qs.edges = EdgeSet(g.num_edges(), ids);
  qs.degree.assign(g.num_vertices(), 0);
  for (EdgeId e : qs.edges) {
    ++qs.degree[g.edge(e).u];
    ++qs.degree[g.edge(e).v];
  }
  return qs;
}

// Checks every vertex subset of the support (up to 16 vertices).
bool subsets_ok(const Graph& g, const FractionalMatching& x,
                std::optional<double> eps) {
  std::vector<VertexId> verts;
  for (EdgeId e : x.support()) {
    verts.push_back(g.edge(e).u);
    verts.push_back(g.edge(e).v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  const int n = static_cast<int>(verts.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (eps ? size < 2 : (size < 3 || size % 2 == 0)) continue;
    auto in = [&](VertexId v) {
      const int i = std::lower_bound(verts.begin(), verts.end(), v) - verts.begin();
      return (mask >> i & 1) != 0;
    };
    double total = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (in(g.edge(x.ids()[i]).u) && in(g.edge(x.ids()[i]).v))
        total += x.values()[i];
    const double bound = (eps ? *eps : 1.0) * (size / 2);
    if (total > bound + 1e-12) return false;
  }
  return true;
}

}  // namespace

TEST(Fractional, ConstructionAndCombine) {
  const FractionalMatching a(5, {{3, 0.25}, {1, 0.5}});
  const FractionalMatching b(5, {{1, 0.25}, {4, 0.0}});
  EXPECT_EQ(a.ids(), (std::vector<EdgeId>{1, 3}));
  EXPECT_EQ(a.value(2), 0.0);
  const FractionalMatching c = combine(a, b);
  EXPECT_DOUBLE_EQ(c.value(1), 0.75);
  EXPECT_EQ(c.support().ids(), (std::vector<EdgeId>{1, 3}));
  EXPECT_THROW(FractionalMatching(5, {{1, 0.1}, {1, 0.2}}), Error);
  EXPECT_THROW(FractionalMatching(5, {{5, 0.1}}), Error);
  EXPECT_THROW(FractionalMatching(5, {{0, NAN}}), Error);
}

TEST(Fractional, Weight) {
  const Graph g = build_graph({{0, 1, 5.0}, {1, 2, 2.0}}, 0.5);
  EXPECT_EQ(fractional_weight(FractionalMatching(2), g), 0.0);
  EXPECT_DOUBLE_EQ(fractional_weight(FractionalMatching(2, {{0, 1.0}}), g), 5.0);
  const auto loads = vertex_loads(g, FractionalMatching(2, {{0, 0.5}, {1, 0.25}}));
  ASSERT_EQ(loads.size(), 3u);
  EXPECT_DOUBLE_EQ(loads[1].second, 0.75);
}

TEST(Tau, Formula) {
  const double e = std::exp(-1.0);
  EXPECT_NEAR(compute_tau(e, 0.5), std::exp(-3.0) * 0.5 / 20.0, 1e-18);
  EXPECT_NEAR(compute_tau(e, 0.5), 0.0012446, 1e-7);
  for (double eps : {0.01, 0.1, 0.2, e})
    for (double p : {0.001, 0.5, 0.999}) EXPECT_LT(compute_tau(eps, p), p);
  EXPECT_LT(compute_tau(0.05, 0.5), compute_tau(0.1, 0.5));
  EXPECT_THROW(compute_tau(0.5, 0.5), ParameterError);
  EXPECT_THROW(compute_tau(0.0, 0.5), ParameterError);
  EXPECT_THROW(compute_tau(0.1, 1.0), ParameterError);
}

TEST(Classify, PerfectMatchingAllCrucial) {
  std::vector<EdgeInput> edges;
  for (int i = 0; i < 5; ++i) edges.push_back({2 * i, 2 * i + 1, 1.0});
  const Graph g = build_graph(edges, 0.3);
  const EdgeStats s = exact_match_probs(g);
  const Classification c = classify_edges(g, s, compute_tau(0.2, 0.3));
  EXPECT_EQ(c.partition.crucial, EdgeSet::all(g));
  EXPECT_TRUE(c.partition.noncrucial.empty());
  // tau above p: nothing is crucial.
  const Classification none = classify_edges(g, s, 0.31);
  EXPECT_EQ(none.partition.noncrucial, EdgeSet::all(g));
  EXPECT_DOUBLE_EQ(none.budgets.qN[0], 0.3);
}

TEST(Classify, TightnessInstance) {
  const int L = 20;
  const Graph g = gen_tightness_instance(L);
  const EdgeStats s = estimate_match_probs(g, 4000, 3);
  const Classification c = classify_edges(g, s, 0.1);
  const TightnessLayout at{L};
  for (int i = 0; i < L; ++i) {
    EXPECT_TRUE(c.partition.is_crucial(*g.find_edge(at.a(i), at.b(i))));
    EXPECT_TRUE(c.partition.is_crucial(*g.find_edge(at.a_prime(i), at.b_prime(i))));
    for (int j = 0; j < L; ++j)
      EXPECT_FALSE(c.partition.is_crucial(*g.find_edge(at.b(i), at.b_prime(j))));
  }
  EXPECT_EQ(c.partition.crucial.size(), std::size_t(2 * L));
}

TEST(Classify, RejectsMismatchedStats) {
  const Graph g = build_graph({{0, 1, 1.0}}, 0.5);
  EdgeStats s;
  EXPECT_THROW(classify_edges(g, s, 0.1), Error);
  EXPECT_THROW(classify_edges(g, stats_from_q(g, {0.5}), 0.0), ParameterError);
}

TEST(Classify, StarHeavyEdge) {
  // Budget values of the weighted-star walkthrough.
  const Graph g = gen_weighted_star(9990, 999.0, 0.001);
  std::vector<double> q(g.num_edges(), 0.999 / 9990);
  q[0] = 0.001;
  const EdgeStats s = stats_from_q(g, q);
  Classification c = classify_edges(g, s, 0.0005);
  EXPECT_EQ(c.partition.crucial.ids(), (std::vector<EdgeId>{0}));
  EXPECT_NEAR(c.budgets.qN[0], 0.999, 1e-12);
  EXPECT_NEAR(c.budgets.qwN[0], 0.999, 1e-12);
  classify_heavy_semiheavy(g, s, c.partition, c.budgets);
  EXPECT_EQ(c.partition.cls[0], CrucialClass::kHeavy);
  EXPECT_TRUE(check_heavy_contributions(g, c.partition, c.budgets, 0.01).empty());
}

TEST(Classify, HeavyThresholdIsStrict) {
  // Crucial (0,1) with w = qwN_0 + qwN_1 = 0.5 + 0.25, all exact in binary.
  const Graph g = build_graph({{0, 1, 0.75}, {0, 2, 2.0}, {1, 3, 2.0}}, 0.5);
  const EdgeStats s = stats_from_q(g, {0.5, 0.25, 0.125});
  const Classification c = classify_edges(g, s, 0.3);
  ASSERT_EQ(c.partition.crucial.ids(), (std::vector<EdgeId>{0}));
  EXPECT_EQ(c.budgets.qwN[0] + c.budgets.qwN[1], 0.75);
  for (double delta : {1e-9, 0.09, 0.5}) {
    EdgePartition part = c.partition;
    VertexBudgets bud = c.budgets;
    classify_heavy_semiheavy(g, s, part, bud, delta);
    EXPECT_NE(part.cls[0], CrucialClass::kHeavy) << delta;
  }
}

TEST(Classify, CStarTypesAndDirections) {
  // Each case: crucial edge (0,1) with hand-set budgets at 0 and 1.
  struct Case {
    double qN0, qwN0, qN1, qwN1, w;
    int type;
    VertexId head;
  };
  const double d = 0.09;
  const std::vector<Case> cases = {
      // qN_1 > qN_0 and qwN_1 >= qwN_0: type 1 toward 1.
      {0.5, 0.5, 0.6, 0.9, 1.0, 1, 1},
      // hi = 1 has less qwN; w <= 2(1+d) qwN_1: type 2 toward 1.
      {0.5, 0.9, 0.6, 0.5, 1.0, 2, 1},
      // w above 2(1+d) qwN_hi; qN_lo > 1 - d rules out semi-heavy.
      {0.92, 0.9, 0.95, 0.3, 0.7, 3, 0},
  };
  for (const Case& k : cases) {
    VertexBudgets b = budgets(2);
    b.qN = {k.qN0, k.qN1};
    b.qwN = {k.qwN0, k.qwN1};
    const Graph g = build_graph({{0, 1, k.w}}, 0.5);
    EdgePartition part;
    part.cls = {CrucialClass::kUnclassified};
    part.crucial = EdgeSet::all(g);
    part.head = {-1};
    part.type = {0};
    const EdgeStats s = stats_from_q(g, {0.5});
    classify_heavy_semiheavy(g, s, part, b, d);
    ASSERT_EQ(part.cls[0], CrucialClass::kCStar) << k.type;
    EXPECT_EQ(part.type[0], k.type);
    EXPECT_EQ(part.head[0], k.head);
    EXPECT_LE(k.w, 2 * (1 + d) * b.qwN[part.head[0]] + 1e-12);
    EXPECT_DOUBLE_EQ(b.qCminus[k.head], 0.5);
    EXPECT_DOUBLE_EQ(b.qwCminus[k.head], 0.5 * k.w);
    EXPECT_DOUBLE_EQ(b.qCminus[1 - k.head], 0.0);
  }
}

TEST(Classify, SemiHeavy) {
  VertexBudgets b = budgets(2);
  b.qN = {0.5, 0.3};
  b.qwN = {0.2, 2.0};
  const Graph g = build_graph({{0, 1, 1.0}}, 0.5);
  EdgePartition part;
  part.cls = {CrucialClass::kUnclassified};
  part.crucial = EdgeSet::all(g);
  part.head = {-1};
  part.type = {0};
  classify_heavy_semiheavy(g, stats_from_q(g, {0.5}), part, b, 0.09);
  EXPECT_EQ(part.cls[0], CrucialClass::kSemiHeavy);
  EXPECT_EQ(part.semiheavy.ids(), (std::vector<EdgeId>{0}));
}

TEST(Procedure1, NoRealizedEdges) {
  const Graph g = build_graph({{0, 1, 1.0}}, 0.5);
  const Classification c = classify_edges(g, stats_from_q(g, {0.001}), 0.01);
  const QuerySet qs = query_all(g, 1000, {2});
  const FractionalMatching x =
      procedure_noncrucial(g, qs, EdgeSet(1), c.partition, c.budgets, 0.0005, 0.01);
  EXPECT_EQ(x.size(), 0u);
}

TEST(Procedure1, SingleEdgeHandTrace) {
  const Graph g = build_graph({{0, 1, 1.0}}, 0.5);
  const double tau = 0.01, eps = 0.0005;
  const Classification c = classify_edges(g, stats_from_q(g, {0.001}), tau);
  const QuerySet qs = query_all(g, 1000, {2});
  // f = 0.002; x~ = min(f/p, 2 tau/p) = 0.004; both budgets max(0.001, eps)
  // = 0.001; s = 0.001 / 0.004 = 0.25; x = 0.001.
  const FractionalMatching x =
      procedure_noncrucial(g, qs, EdgeSet::all(g), c.partition, c.budgets, eps, tau);
  ASSERT_EQ(x.size(), 1u);
  EXPECT_NEAR(x.value(0), 0.001, 1e-15);
  // Large budget: no scaling, x = x~ capped at 2 tau / p.
  const QuerySet many = query_all(g, 10, {5});
  const FractionalMatching y = procedure_noncrucial(
      g, many, EdgeSet::all(g), c.partition, c.budgets, 0.3, tau);
  EXPECT_NEAR(y.value(0), 2 * tau / 0.5, 1e-15);
}

TEST(Procedure1, SkipsCrucialAndUnsampled) {
  const Graph g = build_graph({{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}, 0.5);
  const Classification c =
      classify_edges(g, stats_from_q(g, {0.001, 0.2, 0.001}), 0.01);
  const QuerySet qs = query_all(g, 100, {1, 20, 0});
  const FractionalMatching x = procedure_noncrucial(
      g, qs, EdgeSet::all(g), c.partition, c.budgets, 0.3, 0.01);
  EXPECT_EQ(x.support().ids(), (std::vector<EdgeId>{0}));
}

TEST(Procedure1, PropertiesOnRandomRuns) {
  const double eps = 1.0 / 3.0;
  int nonempty = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    // Stars have leaves below the threshold; dense graphs mostly do not.
    const Graph g = seed % 2
        ? gen_weighted_star(4000, 3.0, 0.5)
        : gen_random_graph(12, 0.6, WeightMode::uniform(1, 4), 0.5, seed);
    const EdgeStats s = estimate_match_probs(g, 4000, seed);
    const double tau = compute_tau(eps, g.p());
    const Classification c = classify_edges(g, s, tau);
    AlgorithmParams params;
    params.rounds_override = 4000;
    params.seed = seed;
    params.workers = 1;
    const QuerySet qs = run_nonadaptive(g, params);
    for (int t = 0; t < 20; ++t) {
      const EdgeSet real = sample_realization(g, CounterStream(seed, Domain::kProcedure, t));
      const FractionalMatching x =
          procedure_noncrucial(g, qs, real, c.partition, c.budgets, eps, tau);
      for (EdgeId e : x.support()) {
        EXPECT_TRUE(real.contains(e) && qs.edges.contains(e));
        EXPECT_FALSE(c.partition.is_crucial(e));
        EXPECT_LE(x.value(e), 2 * tau / g.p() + 1e-15);
      }
      for (const auto& [v, load] : vertex_loads(g, x))
        EXPECT_LE(load, std::max(c.budgets.qN[v], eps) + 1e-12);
      EXPECT_TRUE(check_blossom_inequalities(g, x, 9, eps).ok());
      nonempty += x.size() > 0;
    }
  }
  EXPECT_GT(nonempty, 50);
}

TEST(Procedure2, Formula) {
  const Graph g = build_graph({{0, 1, 1.0}}, 0.5);
  Matching mu{{0}, 1.0};
  VertexBudgets b = budgets(2);
  const double eps = 0.1;
  EXPECT_NEAR(procedure_crucial_unweighted(g, mu, b, eps).value(0), 1 - eps, 1e-15);
  b.qN = {2 - kSqrt2, 2 - kSqrt2};
  EXPECT_NEAR(procedure_crucial_unweighted(g, mu, b, eps).value(0),
              (1 - eps) * (kSqrt2 - 1), 1e-15);
  b.qN = {0.3, 0.7};
  EXPECT_NEAR(procedure_crucial_unweighted(g, mu, b, eps).value(0),
              (1 - eps) * 0.3, 1e-15);
  b.qN = {1.05, 0.1};  // statistical overshoot clamps at zero
  EXPECT_EQ(procedure_crucial_unweighted(g, mu, b, eps).value(0), 0.0);
  EXPECT_EQ(procedure_crucial_unweighted(g, Matching{}, b, eps).size(), 0u);
}

TEST(Procedure3, AlphaOnStar) {
  EXPECT_EQ(weighted_alpha(0.999, 0.999, 0.0, 0.0, 999.0), 1.0);
  EXPECT_EQ(weighted_alpha(0.0, 0.0, 0.999, 0.999, 999.0), 1.0);
}

TEST(Procedure3, AlphaKeepsNonCrucialMassForLightEdges) {
  // Slope of each budget term past 1 - qN is qwN / qN; w below both rates.
  const double a = weighted_alpha(0.4, 2.0, 0.3, 3.0, 1.0);
  EXPECT_DOUBLE_EQ(a, 1.0 - 0.4);
  EXPECT_DOUBLE_EQ(weighted_alpha(0.0, 0.0, 0.0, 0.0, 1.0), 1.0);
}

TEST(Procedure3, AlphaMatchesGridOracle) {
  StreamEngine rng(3, Domain::kMisc, 0);
  for (int i = 0; i < 2000; ++i) {
    const double qu = rng.uniform() < 0.1 ? 0.0 : rng.uniform();
    const double qv = rng.uniform();
    const double wu = qu * 4 * rng.uniform(), wv = qv * 4 * rng.uniform();
    const double w = 3 * rng.uniform();
    auto f = [&](double alpha) {
      double t = alpha * w;
      if (qu > 0) t += std::min(qu, 1 - alpha) / qu * wu;
      if (qv > 0) t += std::min(qv, 1 - alpha) / qv * wv;
      return t;
    };
    double grid_best = -1;
    for (int k = 0; k <= 20000; ++k) grid_best = std::max(grid_best, f(k / 20000.0));
    const double alpha = weighted_alpha(qu, wu, qv, wv, w);
    EXPECT_GE(f(alpha), grid_best - 1e-9);
  }
}

TEST(Procedure3, StarScalesCenterToEpsilon) {
  const Graph g = gen_weighted_star(999, 999.0, 0.001);
  const double eps = 0.01;
  VertexBudgets b = budgets(g.num_vertices());
  b.qN[0] = 0.999;
  b.qwN[0] = 0.999;
  for (VertexId leaf = 2; leaf < g.num_vertices(); ++leaf) {
    b.qN[leaf] = 0.001;
    b.qwN[leaf] = 0.001;
  }
  std::vector<std::pair<EdgeId, double>> xn;
  for (EdgeId e = 1; e < 301; ++e) xn.push_back({e, 0.003});
  const FractionalMatching xN(g.num_edges(), xn);
  const FractionalMatching x =
      procedure_crucial_weighted(g, Matching{{0}, 999.0}, b, xN, eps);
  EXPECT_DOUBLE_EQ(x.value(0), 1 - eps);
  double center = 0;
  for (const auto& [v, load] : vertex_loads(g, x))
    if (v == 0) center = load;
  EXPECT_NEAR(center, 1.0, 1e-12);
  EXPECT_NEAR(x.value(1), 0.003 * eps / 0.9, 1e-15);
  EXPECT_TRUE(check_fractional_validity(g, x).ok());
  EXPECT_THROW(procedure_crucial_weighted(g, Matching{{1}, 1.0}, b, xN, eps), Error);
}

TEST(Validity, Reports) {
  const Graph g = build_graph({{0, 1, 1.0}, {1, 2, 1.0}}, 0.5);
  EXPECT_TRUE(check_fractional_validity(g, FractionalMatching(2)).ok());
  const ValidityReport r =
      check_fractional_validity(g, FractionalMatching(2, {{0, 0.6}, {1, 0.6}}));
  ASSERT_EQ(r.overloaded.size(), 1u);
  EXPECT_EQ(r.overloaded[0].first, 1);
  EXPECT_TRUE(check_fractional_validity(g, FractionalMatching(2, {{0, -0.1}}))
                  .negative.size() == 1);
}

TEST(Blossom, IntegralMatchingPasses) {
  const Graph g = gen_random_graph(10, 0.5, WeightMode::unit(), 0.5, 2);
  const Matching m = max_weight_matching(g, EdgeSet::all(g));
  std::vector<std::pair<EdgeId, double>> xs;
  for (EdgeId e : m.edges) xs.push_back({e, 1.0});
  EXPECT_TRUE(check_blossom_inequalities(g, FractionalMatching(g.num_edges(), xs), 9).ok());
}

TEST(Blossom, HalfTriangleViolates) {
  const Graph g = build_graph({{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}, 0.5);
  const FractionalMatching x(3, {{0, 0.5}, {1, 0.5}, {2, 0.5}});
  const BlossomReport r = check_blossom_inequalities(g, x, 3);
  ASSERT_EQ(r.violation_count, 1u);
  EXPECT_EQ(r.violations[0].vertices, (std::vector<VertexId>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(r.violations[0].value, 1.5);
  EXPECT_DOUBLE_EQ(r.violations[0].bound, 1.0);
  EXPECT_THROW(check_blossom_inequalities(g, x, 10), SizeLimitError);
  EXPECT_THROW(check_blossom_inequalities(g, x, 3, std::nullopt, 1), SizeLimitError);
}

TEST(Blossom, AgreesWithSubsetOracle) {
  StreamEngine rng(17, Domain::kMisc, 0);
  int violated = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = gen_random_graph(8, 0.5, WeightMode::unit(), 0.5, trial);
    std::vector<std::pair<EdgeId, double>> xs;
    std::vector<double> load(g.num_vertices(), 0.0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      const double room = 1 - std::max(load[ed.u], load[ed.v]);
      const double v = std::min(room, rng.uniform() * 0.7);
      if (v <= 0) continue;
      xs.push_back({e, v});
      load[ed.u] += v;
      load[ed.v] += v;
    }
    const FractionalMatching x(g.num_edges(), xs);
    const bool plain = subsets_ok(g, x, std::nullopt);
    violated += !plain;
    EXPECT_EQ(check_blossom_inequalities(g, x, 8).ok(), plain) << trial;
    for (double eps : {0.2, 0.6})
      EXPECT_EQ(check_blossom_inequalities(g, x, 8, eps).ok(), subsets_ok(g, x, eps))
          << trial << " " << eps;
  }
  EXPECT_GT(violated, 0);
}

TEST(MathRatio, KnownPoints) {
  EXPECT_NEAR(mathratio({kSqrt2 - 1}, {2 - kSqrt2}), 6 - 4 * kSqrt2, 1e-12);
  EXPECT_EQ(mathratio({0.0}, {1.0}), 0.0);
  EXPECT_NEAR(mathratio({0.5, 0.2}, {0.5, 0.3}), (0.25 + 0.06) / (0.7 + 0.4), 1e-15);
}

TEST(MathRatio, RandomSearchStaysBelowBound) {
  const double best = verify_mathratio(100000, 5);
  EXPECT_LE(best, 6 - 4 * kSqrt2 + 1e-9);
  EXPECT_GE(best, 6 - 4 * kSqrt2 - 1e-4);
}

TEST(SingleVertex, MaximumMatchesCalculus) {
  // For delta = 0.1 the derivative vanishes at a root of a quadratic,
  // giving the closed form below.
  EXPECT_NEAR(max_single_vertex_ratio(0.1), (171 - 10 * std::sqrt(146.0)) / 110,
              1e-9);
  double grid = 0;
  for (int k = 0; k <= 200000; ++k)
    grid = std::max(grid, single_vertex_ratio(0.09, k / 200000.0));
  EXPECT_NEAR(max_single_vertex_ratio(0.09), grid, 1e-8);
  EXPECT_LT(max_single_vertex_ratio(0.09), 0.449);
}

TEST(SampleCrucial, EmptyWhenNothingRealized) {
  const Graph g = build_graph({{0, 1, 1.0}, {1, 2, 1.0}}, 0.5);
  const Classification c = classify_edges(g, stats_from_q(g, {0.4, 0.4}), 0.1);
  const QuerySet qs = query_all(g, 10, {3, 3});
  MatchingSolver solver(g);
  for (int t = 0; t < 50; ++t)
    EXPECT_TRUE(sample_crucial_matching(g, qs, c.partition, EdgeSet(2),
                                        CounterStream(1, Domain::kConditional, t), solver)
                    .edges.empty());
}

TEST(SampleCrucial, ConditionalLawMatchesEnumeration) {
  // Path a-b-c-d; only the middle edge is crucial and it is realized.
  const Graph g = build_graph({{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}, 0.5);
  const Classification c = classify_edges(g, stats_from_q(g, {0.01, 0.4, 0.01}), 0.1);
  const QuerySet qs = query_all(g, 10, {1, 3, 1});
  double oracle = 0;
  for (unsigned mask = 0; mask < 4; ++mask) {
    std::vector<EdgeId> ids{1};
    if (mask & 1) ids.push_back(0);
    if (mask & 2) ids.push_back(2);
    if (brute_force_matching(g, EdgeSet(3, ids)).contains(1)) oracle += 0.25;
  }
  MatchingSolver solver(g);
  const int n = 40000;
  int hits = 0;
  for (int t = 0; t < n; ++t) {
    const Matching mu = sample_crucial_matching(
        g, qs, c.partition, EdgeSet(3, {1}), CounterStream(2, Domain::kConditional, t),
        solver);
    for (EdgeId e : mu.edges) EXPECT_EQ(e, 1u);
    hits += mu.size();
  }
  const double sigma = std::sqrt(std::max(oracle * (1 - oracle), 1e-6) / n);
  EXPECT_NEAR(hits / double(n), oracle, 4 * sigma);
}
