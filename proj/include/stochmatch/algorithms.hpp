#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stochmatch/edge_set.hpp"
#include "stochmatch/estimators.hpp"
#include "stochmatch/graph.hpp"

namespace stochmatch {

// The queried edge set S with per-edge pick counts.
struct QuerySet {
  EdgeSet edges;
  std::vector<std::uint32_t> picks;  // rounds whose matching contained e
  std::uint64_t rounds = 0;
  std::vector<std::uint32_t> degree;  // |S ∩ δ(v)|

  double frequency(EdgeId e) const {
    return rounds == 0 ? 0.0 : static_cast<double>(picks[e]) / rounds;
  }
  std::uint32_t max_degree() const;
  double mean_degree() const;
};

struct AlgorithmParams {
  double epsilon = 0.25;
  std::optional<std::uint64_t> rounds_override;
  std::uint64_t seed = 1;
  unsigned workers = 0;
};

constexpr std::uint64_t kMaxRounds = 1'000'000'000;

// ceil(2000 ln(1/eps) ln(1/(eps p)) / (eps^4 p)), at least 1.
// Throws ParameterError for eps or p outside (0, 1) or a result above 1e9.
std::uint64_t compute_R(double epsilon, double p);

std::uint64_t resolve_rounds(const AlgorithmParams& params, double p);

// Each round r draws realization (seed, build, r), takes its maximum-weight
// matching and adds it to S.
QuerySet run_nonadaptive(const Graph& g, const AlgorithmParams& params);

enum class MatchingSelector { kDefault, kAdversarialFig2 };

// Removes a maximum matching from the residual graph R times. The
// adversarial selector replays a fixed script of perfect matchings on a
// gen_blum_bad_instance graph (see README) and falls back to the solver once
// the script is exhausted. Throws Error(kSelectorMismatch) otherwise.
QuerySet run_baseline_greedy(const Graph& g, std::uint64_t rounds,
                             MatchingSelector selector);

// E[M(S ∩ E_p)] over fresh realizations (seed, evaluate, t).
Estimate evaluate_query_set(const Graph& g, const EdgeSet& queried,
                            std::uint64_t trials, std::uint64_t seed,
                            unsigned workers = 0);

struct AdaptiveResult {
  double matched_weight = 0.0;
  std::uint32_t queries_per_vertex = 0;  // max over vertices
  std::uint64_t total_queries = 0;
  std::uint64_t rounds = 0;
  EdgeSet known_realized;
  Matching matching;
};

// Hidden truth is realization (seed, hidden, 0). Runs ceil(1/eps) rounds;
// each draws `samples_per_round` conditional realizations (known-realized
// edges present, known-unrealized absent, unknown ones with probability p),
// queries the union of their matchings and returns M(P).
AdaptiveResult run_adaptive(const Graph& g, double epsilon,
                            std::uint64_t samples_per_round,
                            std::uint64_t seed);

}  // namespace stochmatch
