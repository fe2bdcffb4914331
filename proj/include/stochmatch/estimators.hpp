#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stochmatch/edge_set.hpp"
#include "stochmatch/graph.hpp"
#include "stochmatch/matching.hpp"
#include "stochmatch/rng.hpp"

namespace stochmatch {

// Trials per work unit. Fixed so chunk boundaries never depend on threads.
constexpr std::uint64_t kTrialsPerChunk = 64;

// Appends to `out` the ids from `candidates` (sorted) that survive, each
// independently with probability g.p(). For p >= 1/16 the coin of edge e is
// keyed by e itself, so restricting a realization to a subset commutes with
// sampling; below that, geometric skipping is used for speed.
void sample_edges(const Graph& g, std::span<const EdgeId> candidates,
                  const CounterStream& stream, std::vector<EdgeId>& out);

// Same draws as sample_edges over the full id range, without materializing it.
void sample_all_edges(const Graph& g, const CounterStream& stream,
                      std::vector<EdgeId>& out);

EdgeSet sample_realization(const Graph& g, const CounterStream& stream);
EdgeSet sample_realization(const Graph& g, const EdgeSet& candidates,
                           const CounterStream& stream);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  double lower(double sigmas = 3.0) const { return mean - sigmas * std_error; }
  double upper(double sigmas = 3.0) const { return mean + sigmas * std_error; }
  bool operator==(const Estimate&) const = default;
};

// Mean and standard error of the sample mean (Bessel-corrected variance).
Estimate summarize(double sum, double sum_sq, std::uint64_t n);

// E[M(E_p)] by Monte-Carlo; trial t uses stream (seed, stats, t).
Estimate estimate_opt_mc(const Graph& g, std::uint64_t trials,
                         std::uint64_t seed, unsigned workers = 0);

constexpr std::size_t kEnumerationEdgeLimit = 20;

// Exact E[M(E_p ∩ restrict)] by enumerating realizations of `restrict`.
double exact_expected_matching(const Graph& g, const EdgeSet& restrict);

struct EdgeStats {
  std::vector<double> q;       // Pr[e in M(E_p)]
  std::vector<double> qw;      // q_e * w_e
  std::vector<double> std_error;  // per-edge standard error of q_e
  std::uint64_t trials = 0;    // 0 for exact enumeration
  Estimate opt;                // opt.mean == sum of qw in edge order

  double qw_sum(const EdgeSet& edges) const;
};

EdgeStats estimate_match_probs(const Graph& g, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers = 0);
EdgeStats exact_match_probs(const Graph& g);

// 1 - (1 - q)^R.
double sampling_prob(double q, std::uint64_t rounds);

// Per-vertex mass of q / qw split by edge class; qCminus and qwCminus hold
// the mass of crucial edges directed into the vertex.
struct VertexBudgets {
  std::vector<double> qN, qwN, qC, qwC, qCminus, qwCminus;
};

}  // namespace stochmatch
