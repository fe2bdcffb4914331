#include "stochmatch/estimators.hpp"

#include <array>
#include <cmath>

#include "stochmatch/parallel.hpp"

namespace stochmatch {

namespace {

template <class IdAt>
void sample_positions(const Graph& g, std::size_t count, IdAt id_at,
                      const CounterStream& stream, std::vector<EdgeId>& out) {
  const double p = g.p();
  if (p >= 1.0 / 16) {
    const std::uint64_t threshold = bernoulli_threshold(p);
    for (std::size_t i = 0; i < count; ++i) {
      const EdgeId e = id_at(i);
      if (stream.bits(e) < threshold) out.push_back(e);
    }
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t draw = 0;
  std::array<std::uint64_t, 2> block{};
  std::size_t pos = 0;
  while (true) {
    // same values as stream.bits(draw), one block per two draws
    if ((draw & 1) == 0) block = stream.block(static_cast<std::uint32_t>(draw >> 1));
    const std::uint64_t bits = block[draw & 1];
    ++draw;
    // uniform in (0, 1]
    const double u = (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
    const double skip = std::floor(std::log(u) / log_q);
    if (skip >= static_cast<double>(count - pos)) break;
    pos += static_cast<std::size_t>(skip);
    out.push_back(id_at(pos));
    ++pos;
  }
}

}  // namespace

void sample_edges(const Graph& g, std::span<const EdgeId> candidates,
                  const CounterStream& stream, std::vector<EdgeId>& out) {
  sample_positions(
      g, candidates.size(), [&](std::size_t i) { return candidates[i]; },
      stream, out);
}

void sample_all_edges(const Graph& g, const CounterStream& stream,
                      std::vector<EdgeId>& out) {
  sample_positions(
      g, g.num_edges(), [](std::size_t i) { return static_cast<EdgeId>(i); },
      stream, out);
}

EdgeSet sample_realization(const Graph& g, const CounterStream& stream) {
  std::vector<EdgeId> out;
  sample_all_edges(g, stream, out);
  return EdgeSet::from_sorted(g.num_edges(), std::move(out));
}

EdgeSet sample_realization(const Graph& g, const EdgeSet& candidates,
                           const CounterStream& stream) {
  std::vector<EdgeId> out;
  sample_edges(g, candidates.ids(), stream, out);
  return EdgeSet::from_sorted(g.num_edges(), std::move(out));
}

Estimate summarize(double sum, double sum_sq, std::uint64_t n) {
  Estimate est;
  est.trials = n;
  if (n == 0) return est;
  est.mean = sum / static_cast<double>(n);
  if (n > 1) {
    const double var = std::max(
        0.0, (sum_sq - sum * est.mean) / static_cast<double>(n - 1));
    est.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

namespace {

void require_trials(std::uint64_t trials) {
  if (trials == 0)
    throw ParameterError(ErrorKind::kInvalidArgument, "trials must be >= 1");
}

std::size_t chunk_count(std::uint64_t trials) {
  return static_cast<std::size_t>((trials + kTrialsPerChunk - 1) /
                                  kTrialsPerChunk);
}

}  // namespace

Estimate estimate_opt_mc(const Graph& g, std::uint64_t trials,
                         std::uint64_t seed, unsigned workers) {
  require_trials(trials);
  const std::size_t chunks = chunk_count(trials);
  std::vector<double> sums(chunks), squares(chunks);
  std::vector<MatchingSolver> solvers;
  const unsigned nw = resolve_workers(workers);
  for (unsigned w = 0; w < nw; ++w) solvers.emplace_back(g);
  parallel_chunks(chunks, workers, [&](std::size_t c, unsigned w) {
    std::vector<EdgeId> realized;
    double s = 0.0, s2 = 0.0;
    const std::uint64_t end = std::min(trials, (c + 1) * kTrialsPerChunk);
    for (std::uint64_t t = c * kTrialsPerChunk; t < end; ++t) {
      realized.clear();
      sample_all_edges(g, CounterStream(seed, Domain::kStats, t),
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

double exact_expected_matching(const Graph& g, const EdgeSet& restrict) {
  if (restrict.size() > kEnumerationEdgeLimit)
    throw SizeLimitError("exact_expected_matching: too many edges",
                         restrict.size(), kEnumerationEdgeLimit);
  const std::size_t m = restrict.size();
  const double p = g.p();
  MatchingSolver solver(g);
  std::vector<EdgeId> active;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    active.clear();
    for (std::size_t k = 0; k < m; ++k)
      if (mask >> k & 1) active.push_back(restrict.ids()[k]);
    const auto present = static_cast<int>(active.size());
    const double prob =
        std::pow(p, present) * std::pow(1.0 - p, static_cast<int>(m) - present);
    total += prob * solver.solve(active).weight;
  }
  return total;
}

double EdgeStats::qw_sum(const EdgeSet& edges) const {
  double total = 0.0;
  for (EdgeId e : edges) total += qw[e];
  return total;
}

namespace {

void finish_stats(const Graph& g, EdgeStats& stats) {
  stats.qw.resize(g.num_edges());
  double total = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    stats.qw[e] = stats.q[e] * g.edge(e).w;
    total += stats.qw[e];
  }
  stats.opt.mean = total;
}

}  // namespace

EdgeStats estimate_match_probs(const Graph& g, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers) {
  require_trials(trials);
  const std::size_t m = g.num_edges();
  const std::size_t chunks = chunk_count(trials);
  const unsigned nw = resolve_workers(workers);
  std::vector<MatchingSolver> solvers;
  std::vector<std::vector<std::uint64_t>> counts(nw);
  for (unsigned w = 0; w < nw; ++w) solvers.emplace_back(g);
  std::vector<double> sums(chunks), squares(chunks);
  parallel_chunks(chunks, workers, [&](std::size_t c, unsigned w) {
    if (counts[w].empty()) counts[w].assign(m, 0);
    std::vector<EdgeId> realized;
    double s = 0.0, s2 = 0.0;
    const std::uint64_t end = std::min(trials, (c + 1) * kTrialsPerChunk);
    for (std::uint64_t t = c * kTrialsPerChunk; t < end; ++t) {
      realized.clear();
      sample_all_edges(g, CounterStream(seed, Domain::kStats, t),
                   realized);
      const Matching matched = solvers[w].solve(realized);
      for (EdgeId e : matched.edges) ++counts[w][e];
      s += matched.weight;
      s2 += matched.weight * matched.weight;
    }
    sums[c] = s;
    squares[c] = s2;
  });

  EdgeStats stats;
  stats.trials = trials;
  stats.q.assign(m, 0.0);
  stats.std_error.assign(m, 0.0);
  const auto T = static_cast<double>(trials);
  for (EdgeId e = 0; e < m; ++e) {
    std::uint64_t total = 0;
    for (const auto& per_worker : counts)
      if (!per_worker.empty()) total += per_worker[e];
    const double q = static_cast<double>(total) / T;
    stats.q[e] = q;
    if (trials > 1) stats.std_error[e] = std::sqrt(q * (1.0 - q) / (T - 1.0));
  }
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    sum += sums[c];
    sum_sq += squares[c];
  }
  stats.opt = summarize(sum, sum_sq, trials);
  finish_stats(g, stats);
  return stats;
}

EdgeStats exact_match_probs(const Graph& g) {
  const std::size_t m = g.num_edges();
  if (m > kEnumerationEdgeLimit)
    throw SizeLimitError("exact_match_probs: too many edges", m,
                         kEnumerationEdgeLimit);
  const double p = g.p();
  MatchingSolver solver(g);
  EdgeStats stats;
  stats.q.assign(m, 0.0);
  stats.std_error.assign(m, 0.0);
  std::vector<EdgeId> active;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    active.clear();
    for (EdgeId e = 0; e < m; ++e)
      if (mask >> e & 1) active.push_back(e);
    const auto present = static_cast<int>(active.size());
    const double prob =
        std::pow(p, present) * std::pow(1.0 - p, static_cast<int>(m) - present);
    for (EdgeId e : solver.solve(active).edges) stats.q[e] += prob;
  }
  finish_stats(g, stats);
  return stats;
}

double sampling_prob(double q, std::uint64_t rounds) {
  if (!(q >= 0.0 && q <= 1.0))
    throw ParameterError(ErrorKind::kInvalidArgument,
                         "sampling_prob: q must lie in [0, 1]");
  if (rounds == 0) return 0.0;
  return 1.0 - std::pow(1.0 - q, static_cast<double>(rounds));
}

}  // namespace stochmatch
