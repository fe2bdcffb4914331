#include "stochmatch/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stochmatch/generators.hpp"
#include "stochmatch/matching.hpp"
#include "stochmatch/parallel.hpp"

namespace stochmatch {

std::uint32_t QuerySet::max_degree() const {
  return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

double QuerySet::mean_degree() const {
  if (degree.empty()) return 0.0;
  const double total =
      std::accumulate(degree.begin(), degree.end(), 0.0);
  return total / static_cast<double>(degree.size());
}

std::uint64_t compute_R(double epsilon, double p) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ParameterError(ErrorKind::kInvalidArgument,
                         "compute_R: epsilon must lie in (0, 1)");
  if (!(p > 0.0 && p < 1.0))
    throw ParameterError(ErrorKind::kProbabilityOutOfRange,
                         "compute_R: p must lie in (0, 1)");
  const double value = 2000.0 * std::log(1.0 / epsilon) *
                       std::log(1.0 / (epsilon * p)) /
                       (std::pow(epsilon, 4) * p);
  const double rounds = std::ceil(value);
  if (!(rounds <= static_cast<double>(kMaxRounds)))
    throw ParameterError(ErrorKind::kOverflow,
                         "compute_R: " + std::to_string(value) +
                             " rounds exceeds the limit of 1e9");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(rounds));
}

std::uint64_t resolve_rounds(const AlgorithmParams& params, double p) {
  if (params.rounds_override) {
    if (*params.rounds_override == 0)
      throw ParameterError(ErrorKind::kInvalidArgument, "R must be >= 1");
    return *params.rounds_override;
  }
  return compute_R(params.epsilon, p);
}

namespace {

QuerySet finish_query_set(const Graph& g, std::vector<std::uint32_t> picks,
                          std::uint64_t rounds) {
  QuerySet qs;
  qs.rounds = rounds;
  std::vector<EdgeId> ids;
  qs.degree.assign(g.num_vertices(), 0);
  for (EdgeId e = 0; e < picks.size(); ++e) {
    if (picks[e] == 0) continue;
    ids.push_back(e);
    ++qs.degree[g.edge(e).u];
    ++qs.degree[g.edge(e).v];
  }
  qs.edges = EdgeSet::from_sorted(g.num_edges(), std::move(ids));
  qs.picks = std::move(picks);
  return qs;
}

}  // namespace

QuerySet run_nonadaptive(const Graph& g, const AlgorithmParams& params) {
  const std::uint64_t rounds = resolve_rounds(params, g.p());
  const std::size_t m = g.num_edges();
  const std::size_t chunks =
      static_cast<std::size_t>((rounds + kTrialsPerChunk - 1) / kTrialsPerChunk);
  const unsigned nw = resolve_workers(params.workers);
  std::vector<MatchingSolver> solvers;
  for (unsigned w = 0; w < nw; ++w) solvers.emplace_back(g);
  std::vector<std::vector<std::uint32_t>> picks(nw);
  parallel_chunks(chunks, params.workers, [&](std::size_t c, unsigned w) {
    if (picks[w].empty()) picks[w].assign(m, 0);
    std::vector<EdgeId> realized;
    const std::uint64_t end = std::min(rounds, (c + 1) * kTrialsPerChunk);
    for (std::uint64_t r = c * kTrialsPerChunk; r < end; ++r) {
      realized.clear();
      sample_all_edges(g, CounterStream(params.seed, Domain::kBuild, r),
                   realized);
      for (EdgeId e : solvers[w].solve(realized).edges) ++picks[w][e];
    }
  });
  std::vector<std::uint32_t> total(m, 0);
  for (const auto& per_worker : picks)
    if (!per_worker.empty())
      for (std::size_t e = 0; e < m; ++e) total[e] += per_worker[e];
  return finish_query_set(g, std::move(total), rounds);
}

namespace {

// Scripted rounds: M1 = (B1,C1) + (A_i,B2_i) + (D_i,C2_i);
// M2 = (B2,C2) + (A_i,B1_i) + (D_i,C1_i);
// M(2+s), s = 1..N-1 = (A_i, B2_{i+s}) + (D_i, C1_{i+s}).
std::vector<EdgeId> scripted_matching(const Graph& g, int N,
                                      std::uint64_t round) {
  const BlumLayout at{N};
  std::vector<std::pair<VertexId, VertexId>> pairs;
  if (round == 0) {
    for (int i = 0; i < N; ++i) {
      pairs.push_back({at.b1(i), at.c1(i)});
      pairs.push_back({at.a(i), at.b2(i)});
      pairs.push_back({at.d(i), at.c2(i)});
    }
  } else if (round == 1) {
    for (int i = 0; i < N; ++i) {
      pairs.push_back({at.b2(i), at.c2(i)});
      pairs.push_back({at.a(i), at.b1(i)});
      pairs.push_back({at.d(i), at.c1(i)});
    }
  } else {
    const int shift = static_cast<int>(round - 1);
    for (int i = 0; i < N; ++i) {
      pairs.push_back({at.a(i), at.b2((i + shift) % N)});
      pairs.push_back({at.d(i), at.c1((i + shift) % N)});
    }
  }
  std::vector<EdgeId> ids;
  for (auto [x, y] : pairs) ids.push_back(*g.find_edge(x, y));
  std::sort(ids.begin(), ids.end());
  return ids;
}

int blum_size_or_throw(const Graph& g) {
  const int n = g.num_vertices();
  if (n < 6 || n % 6 != 0 || !(g == gen_blum_bad_instance(n / 6)))
    throw Error(ErrorKind::kSelectorMismatch,
                "adversarial_fig2 selector requires a gen_blum_bad_instance "
                "graph");
  return n / 6;
}

}  // namespace

QuerySet run_baseline_greedy(const Graph& g, std::uint64_t rounds,
                             MatchingSelector selector) {
  if (rounds == 0)
    throw ParameterError(ErrorKind::kInvalidArgument, "R must be >= 1");
  std::uint64_t scripted = 0;
  int N = 0;
  if (selector == MatchingSelector::kAdversarialFig2) {
    N = blum_size_or_throw(g);
    scripted = static_cast<std::uint64_t>(N) + 1;
  }
  std::vector<std::uint32_t> picks(g.num_edges(), 0);
  EdgeSet residual = EdgeSet::all(g);
  MatchingSolver solver(g);
  for (std::uint64_t r = 0; r < rounds && !residual.empty(); ++r) {
    std::vector<EdgeId> chosen = r < scripted ? scripted_matching(g, N, r)
                                              : solver.solve(residual).edges;
    for (EdgeId e : chosen) ++picks[e];
    residual = residual.minus(EdgeSet::from_sorted(g.num_edges(), chosen));
  }
  return finish_query_set(g, std::move(picks), rounds);
}

Estimate evaluate_query_set(const Graph& g, const EdgeSet& queried,
                            std::uint64_t trials, std::uint64_t seed,
                            unsigned workers) {
  if (trials == 0)
    throw ParameterError(ErrorKind::kInvalidArgument, "trials must be >= 1");
  const std::size_t chunks =
      static_cast<std::size_t>((trials + kTrialsPerChunk - 1) / kTrialsPerChunk);
  const unsigned nw = resolve_workers(workers);
  std::vector<MatchingSolver> solvers;
  for (unsigned w = 0; w < nw; ++w) solvers.emplace_back(g);
  std::vector<double> sums(chunks), squares(chunks);
  parallel_chunks(chunks, workers, [&](std::size_t c, unsigned w) {
    std::vector<EdgeId> realized;
    double s = 0.0, s2 = 0.0;
    const std::uint64_t end = std::min(trials, (c + 1) * kTrialsPerChunk);
    for (std::uint64_t t = c * kTrialsPerChunk; t < end; ++t) {
      realized.clear();
      sample_edges(g, queried.ids(), CounterStream(seed, Domain::kEvaluate, t),
                   realized);
      const double x = solvers[w].solve(realized).weight;
      s += x;
      s2 += x * x;
    }
    sums[c] = s;
    squares[c] = s2;
  });
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    sum += sums[c];
    sum_sq += squares[c];
  }
  return summarize(sum, sum_sq, trials);
}

AdaptiveResult run_adaptive(const Graph& g, double epsilon,
                            std::uint64_t samples_per_round,
                            std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw ParameterError(ErrorKind::kInvalidArgument,
                         "run_adaptive: epsilon must lie in (0, 1]");
  if (samples_per_round == 0)
    throw ParameterError(ErrorKind::kInvalidArgument,
                         "run_adaptive: R_star must be >= 1");
  const std::size_t m = g.num_edges();
  const auto rounds = static_cast<std::uint64_t>(std::ceil(1.0 / epsilon - 1e-12));

  const EdgeSet hidden =
      sample_realization(g, CounterStream(seed, Domain::kHidden, 0));
  const std::vector<bool> truth = hidden.to_mask();

  enum : std::uint8_t { kUnknown, kRealized, kUnrealized };
  std::vector<std::uint8_t> status(m, kUnknown);
  std::vector<std::uint32_t> queries(g.num_vertices(), 0);
  MatchingSolver solver(g);
  AdaptiveResult result;
  result.rounds = rounds;

  std::vector<EdgeId> known, unknown, realized, sampled;
  for (std::uint64_t r = 0; r < rounds; ++r) {
    known.clear();
    unknown.clear();
    for (EdgeId e = 0; e < m; ++e) {
      if (status[e] == kRealized) known.push_back(e);
      if (status[e] == kUnknown) unknown.push_back(e);
    }
    std::vector<char> in_round(m, 0);
    for (std::uint64_t j = 0; j < samples_per_round; ++j) {
      sampled.clear();
      sample_edges(g, unknown,
                   CounterStream(seed, Domain::kAdaptive,
                                 (r << 32) | (j & 0xffffffffu)),
                   sampled);
      realized.clear();
      std::merge(known.begin(), known.end(), sampled.begin(), sampled.end(),
                 std::back_inserter(realized));
      for (EdgeId e : solver.solve(realized).edges) in_round[e] = 1;
    }
    for (EdgeId e = 0; e < m; ++e) {
      if (!in_round[e] || status[e] != kUnknown) continue;
      status[e] = truth[e] ? kRealized : kUnrealized;
      ++queries[g.edge(e).u];
      ++queries[g.edge(e).v];
      ++result.total_queries;
    }
  }
  known.clear();
  for (EdgeId e = 0; e < m; ++e)
    if (status[e] == kRealized) known.push_back(e);
  result.known_realized = EdgeSet::from_sorted(m, known);
  result.matching = solver.solve(known);
  result.matched_weight = result.matching.weight;
  result.queries_per_vertex =
      queries.empty() ? 0 : *std::max_element(queries.begin(), queries.end());
  return result;
}

}  // namespace stochmatch
