#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stochmatch/algorithms.hpp"
#include "stochmatch/edge_set.hpp"
#include "stochmatch/estimators.hpp"
#include "stochmatch/graph.hpp"
#include "stochmatch/matching.hpp"

namespace stochmatch {

// Sparse vector x over edge ids.
class FractionalMatching {
 public:
  FractionalMatching() = default;
  explicit FractionalMatching(std::size_t universe) : universe_(universe) {}
  // Entries may be unsorted; duplicate ids are an error.
  FractionalMatching(std::size_t universe,
                     std::vector<std::pair<EdgeId, double>> entries);

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<EdgeId>& ids() const { return ids_; }
  const std::vector<double>& values() const { return values_; }
  double value(EdgeId e) const;
  EdgeSet support() const;  // entries with a nonzero value

  bool operator==(const FractionalMatching&) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<EdgeId> ids_;
  std::vector<double> values_;
};

// Sum of two fractional matchings.
FractionalMatching combine(const FractionalMatching& a,
                           const FractionalMatching& b);

// Per-vertex sums x_v over the vertices touched by x, ascending by vertex.
std::vector<std::pair<VertexId, double>> vertex_loads(
    const Graph& g, const FractionalMatching& x);

double fractional_weight(const FractionalMatching& x, const Graph& g);

enum class CrucialClass : std::uint8_t {
  kNonCrucial = 0,
  kHeavy = 1,
  kSemiHeavy = 2,
  kCStar = 3,
  kUnclassified = 4,  // crucial, heavy classification not run yet
};

struct EdgePartition {
  double tau = 0.0;
  double delta = 0.0;
  std::vector<CrucialClass> cls;  // per edge
  EdgeSet crucial, noncrucial, heavy, semiheavy, cstar;
  std::vector<VertexId> head;      // C* edges: vertex the edge points to
  std::vector<std::uint8_t> type;  // C* edges: 1, 2 or 3; otherwise 0

  bool is_crucial(EdgeId e) const { return cls[e] != CrucialClass::kNonCrucial; }
};

struct Classification {
  EdgePartition partition;
  VertexBudgets budgets;
};

// tau = eps^3 p / (20 ln(1/eps)); requires 0 < eps <= 1/e and 0 < p < 1.
double compute_tau(double epsilon, double p);

// q_e >= tau is crucial. Fills qN, qwN, qC, qwC; zeroes qCminus, qwCminus.
Classification classify_edges(const Graph& g, const EdgeStats& stats,
                              double tau);

// Splits C into heavy, semi-heavy and C*, orients and types every C* edge
// and accumulates the directed crucial mass into budgets.qCminus/qwCminus.
void classify_heavy_semiheavy(const Graph& g, const EdgeStats& stats,
                              EdgePartition& partition, VertexBudgets& budgets,
                              double delta = 0.09);

// Procedure 1 on the realized, sampled, non-crucial edges.
FractionalMatching procedure_noncrucial(const Graph& g, const QuerySet& qs,
                                        const EdgeSet& realized,
                                        const EdgePartition& partition,
                                        const VertexBudgets& budgets,
                                        double epsilon, double tau);

// Draws mu^C from the conditional law of M(E_p) ∩ S_p ∩ C given the
// realization of S ∩ C: edges of S ∩ C keep `crucial_realization`, every
// other edge is redrawn from `stream`.
Matching sample_crucial_matching(const Graph& g, const QuerySet& qs,
                                 const EdgePartition& partition,
                                 const EdgeSet& crucial_realization,
                                 const CounterStream& stream,
                                 MatchingSolver& solver);

// x_e = (1 - eps) min(1 - qN_u, 1 - qN_v), clamped at 0, on edges of mu.
FractionalMatching procedure_crucial_unweighted(const Graph& g,
                                                const Matching& mu,
                                                const VertexBudgets& budgets,
                                                double epsilon);

// Maximizer over [0, 1] of the Procedure 3 objective; ties go to larger
// alpha. An endpoint with qN = 0 contributes nothing.
double weighted_alpha(double qN_u, double qwN_u, double qN_v, double qwN_v,
                      double weight);

// Procedure 3: crucial values from weighted_alpha, combined with xN, then
// non-crucial values scaled down at every vertex whose load exceeds 1.
FractionalMatching procedure_crucial_weighted(const Graph& g,
                                              const Matching& mu,
                                              const VertexBudgets& budgets,
                                              const FractionalMatching& xN,
                                              double epsilon);

struct ValidityReport {
  std::vector<std::pair<VertexId, double>> overloaded;  // x_v > 1 + 1e-12
  std::vector<EdgeId> negative;
  bool ok() const { return overloaded.empty() && negative.empty(); }
};

ValidityReport check_fractional_validity(const Graph& g,
                                         const FractionalMatching& x);

struct BlossomViolation {
  std::vector<VertexId> vertices;
  double value = 0.0;  // x(U)
  double bound = 0.0;
};

struct BlossomReport {
  std::vector<BlossomViolation> violations;  // first kMaxReported found
  std::uint64_t violation_count = 0;
  std::uint64_t sets_examined = 0;
  bool ok() const { return violation_count == 0; }
  static constexpr std::size_t kMaxReported = 64;
};

constexpr std::size_t kMaxBlossomSetSize = 9;

// Without `epsilon`: x(U) <= floor(|U|/2) for odd |U| >= 3. With it:
// x(U) <= eps floor(|U|/2) for every |U| >= 2. Sets up to max_set_size
// vertices among those touched by the support are covered. Only connected
// sets are enumerated (x(U) splits over components and the bound is
// superadditive); for the plain check this relies on x being valid.
// Throws SizeLimitError if max_set_size > 9 or the search exceeds
// `work_limit` enumeration steps.
BlossomReport check_blossom_inequalities(
    const Graph& g, const FractionalMatching& x, std::size_t max_set_size,
    std::optional<double> epsilon = std::nullopt,
    std::uint64_t work_limit = 200'000'000);

// sum a_i b_i / sum (a_i + b_i / 2).
double mathratio(const std::vector<double>& a, const std::vector<double>& b);

// Largest ratio over `samples` random tuples (n in 1..8, a_i, b_i >= 0,
// a_i + b_i <= 1) and a deterministic grid.
double verify_mathratio(std::uint64_t samples, std::uint64_t seed);

// 2(1+d)(1-q)(d+q) / (1/2 + 2(1+d)(1-q)).
double single_vertex_ratio(double delta, double qN);
// Maximum of single_vertex_ratio over q in [0, 1] (grid plus refinement).
double max_single_vertex_ratio(double delta);

// Heavy edges: (1-eps) w - (qwN_u + qwN_v) >= (delta/(1+delta) - eps) w.
// Returns the heavy edges that fail it (none expected).
std::vector<EdgeId> check_heavy_contributions(const Graph& g,
                                              const EdgePartition& partition,
                                              const VertexBudgets& budgets,
                                              double epsilon);

}  // namespace stochmatch
