#include "stochmatch/fractional.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "stochmatch/errors.hpp"
#include "stochmatch/rng.hpp"

namespace stochmatch {

namespace {

constexpr double kTolerance = 1e-12;

using Loads = std::vector<std::pair<VertexId, double>>;

// Vertex sums accumulated in (vertex, edge id) order.
Loads loads_of(const Graph& g, const std::vector<EdgeId>& ids,
               const std::vector<double>& values) {
  struct Entry {
    VertexId v;
    EdgeId e;
    double x;
  };
  std::vector<Entry> entries;
  entries.reserve(2 * ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Edge& edge = g.edge(ids[i]);
    entries.push_back({edge.u, ids[i], values[i]});
    entries.push_back({edge.v, ids[i], values[i]});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.v != b.v ? a.v < b.v : a.e < b.e;
  });
  Loads out;
  for (const Entry& en : entries) {
    if (out.empty() || out.back().first != en.v) out.push_back({en.v, 0.0});
    out.back().second += en.x;
  }
  return out;
}

double load_at(const Loads& loads, VertexId v) {
  auto it = std::lower_bound(
      loads.begin(), loads.end(), v,
      [](const std::pair<VertexId, double>& a, VertexId b) { return a.first < b; });
  return it != loads.end() && it->first == v ? it->second : 0.0;
}

void require_sizes(const Graph& g, const VertexBudgets& budgets) {
  if (budgets.qN.size() != static_cast<std::size_t>(g.num_vertices()) ||
      budgets.qwN.size() != budgets.qN.size())
    throw Error(ErrorKind::kInvalidArgument,
                "vertex budgets do not match the graph");
}

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ParameterError(ErrorKind::kInvalidArgument,
                         "epsilon must lie in (0, 1)");
}

}  // namespace

FractionalMatching::FractionalMatching(
    std::size_t universe, std::vector<std::pair<EdgeId, double>> entries)
    : universe_(universe) {
  std::sort(entries.begin(), entries.end());
  ids_.reserve(entries.size());
  values_.reserve(entries.size());
  for (const auto& [e, x] : entries) {
    if (e >= universe)
      throw Error(ErrorKind::kInvalidArgument,
                  "edge id " + std::to_string(e) + " out of range");
    if (!ids_.empty() && ids_.back() == e)
      throw Error(ErrorKind::kDuplicateEdge,
                  "edge id " + std::to_string(e) + " listed twice");
    if (!std::isfinite(x))
      throw Error(ErrorKind::kInvalidArgument,
                  "non-finite value for edge " + std::to_string(e));
    ids_.push_back(e);
    values_.push_back(x);
  }
}

double FractionalMatching::value(EdgeId e) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), e);
  return it != ids_.end() && *it == e ? values_[it - ids_.begin()] : 0.0;
}

EdgeSet FractionalMatching::support() const {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (values_[i] != 0.0) out.push_back(ids_[i]);
  return EdgeSet::from_sorted(universe_, std::move(out));
}

FractionalMatching combine(const FractionalMatching& a,
                           const FractionalMatching& b) {
  std::vector<std::pair<EdgeId, double>> entries;
  std::size_t i = 0, j = 0;
  const auto& ai = a.ids();
  const auto& bi = b.ids();
  while (i < ai.size() || j < bi.size()) {
    if (j == bi.size() || (i < ai.size() && ai[i] < bi[j])) {
      entries.push_back({ai[i], a.values()[i]});
      ++i;
    } else if (i == ai.size() || bi[j] < ai[i]) {
      entries.push_back({bi[j], b.values()[j]});
      ++j;
    } else {
      entries.push_back({ai[i], a.values()[i] + b.values()[j]});
      ++i;
      ++j;
    }
  }
  return FractionalMatching(std::max(a.universe(), b.universe()),
                            std::move(entries));
}

std::vector<std::pair<VertexId, double>> vertex_loads(
    const Graph& g, const FractionalMatching& x) {
  return loads_of(g, x.ids(), x.values());
}

double fractional_weight(const FractionalMatching& x, const Graph& g) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    total += x.values()[i] * g.edge(x.ids()[i]).w;
  return total;
}

double compute_tau(double epsilon, double p) {
  if (!(epsilon > 0.0 && epsilon <= std::exp(-1.0)))
    throw ParameterError(ErrorKind::kInvalidArgument,
                         "tau: epsilon must lie in (0, 1/e]");
  if (!(p > 0.0 && p < 1.0))
    throw ParameterError(ErrorKind::kProbabilityOutOfRange,
                         "tau: p must lie in (0, 1)");
  return epsilon * epsilon * epsilon * p / (20.0 * std::log(1.0 / epsilon));
}

Classification classify_edges(const Graph& g, const EdgeStats& stats,
                              double tau) {
  const std::size_t m = g.num_edges();
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (stats.q.size() != m || stats.qw.size() != m)
    throw Error(ErrorKind::kInvalidArgument,
                "edge statistics do not match the graph");
  if (!(tau > 0.0))
    throw ParameterError(ErrorKind::kInvalidArgument, "tau must be positive");
  Classification out;
  EdgePartition& part = out.partition;
  VertexBudgets& bud = out.budgets;
  part.tau = tau;
  part.cls.assign(m, CrucialClass::kNonCrucial);
  part.head.assign(m, -1);
  part.type.assign(m, 0);
  for (auto* v : {&bud.qN, &bud.qwN, &bud.qC, &bud.qwC, &bud.qCminus,
                  &bud.qwCminus})
    v->assign(n, 0.0);
  std::vector<EdgeId> crucial, noncrucial;
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& edge = g.edge(e);
    if (stats.q[e] >= tau) {
      part.cls[e] = CrucialClass::kUnclassified;
      crucial.push_back(e);
      for (VertexId v : {edge.u, edge.v}) {
        bud.qC[v] += stats.q[e];
        bud.qwC[v] += stats.qw[e];
      }
    } else {
      noncrucial.push_back(e);
      for (VertexId v : {edge.u, edge.v}) {
        bud.qN[v] += stats.q[e];
        bud.qwN[v] += stats.qw[e];
      }
    }
  }
  part.crucial = EdgeSet::from_sorted(m, std::move(crucial));
  part.noncrucial = EdgeSet::from_sorted(m, std::move(noncrucial));
  part.heavy = part.semiheavy = part.cstar = EdgeSet(m);
  return out;
}

void classify_heavy_semiheavy(const Graph& g, const EdgeStats& stats,
                              EdgePartition& part, VertexBudgets& bud,
                              double delta) {
  require_sizes(g, bud);
  if (!(delta > 0.0))
    throw ParameterError(ErrorKind::kInvalidArgument, "delta must be positive");
  const std::size_t m = g.num_edges();
  part.delta = delta;
  bud.qCminus.assign(bud.qN.size(), 0.0);
  bud.qwCminus.assign(bud.qN.size(), 0.0);
  std::vector<EdgeId> heavy, semi, cstar;
  for (EdgeId e : part.crucial) {
    const Edge& edge = g.edge(e);
    const double w = edge.w;
    const VertexId u = edge.u, v = edge.v;
    part.head[e] = -1;
    part.type[e] = 0;
    if (w >= (1.0 + delta) * (bud.qwN[u] + bud.qwN[v])) {
      part.cls[e] = CrucialClass::kHeavy;
      heavy.push_back(e);
      continue;
    }
    bool is_semi = false;
    for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
      if (w >= 2.0 * (1.0 + delta) * bud.qwN[x] && bud.qN[y] <= 1.0 - delta &&
          bud.qN[x] >= bud.qN[y])
        is_semi = true;
    }
    if (is_semi) {
      part.cls[e] = CrucialClass::kSemiHeavy;
      semi.push_back(e);
      continue;
    }
    // hi: endpoint with the larger qN (then larger qwN, then lower id).
    VertexId hi = u, lo = v;
    if (bud.qN[v] > bud.qN[u] ||
        (bud.qN[v] == bud.qN[u] && bud.qwN[v] > bud.qwN[u]))
      std::swap(hi, lo);
    if (bud.qwN[hi] >= bud.qwN[lo]) {
      part.type[e] = 1;
      part.head[e] = hi;
    } else if (w <= 2.0 * (1.0 + delta) * bud.qwN[hi]) {
      part.type[e] = 2;
      part.head[e] = hi;
    } else {
      part.type[e] = 3;
      part.head[e] = lo;
    }
    part.cls[e] = CrucialClass::kCStar;
    cstar.push_back(e);
    bud.qCminus[part.head[e]] += stats.q[e];
    bud.qwCminus[part.head[e]] += stats.qw[e];
  }
  part.heavy = EdgeSet::from_sorted(m, std::move(heavy));
  part.semiheavy = EdgeSet::from_sorted(m, std::move(semi));
  part.cstar = EdgeSet::from_sorted(m, std::move(cstar));
}

FractionalMatching procedure_noncrucial(const Graph& g, const QuerySet& qs,
                                        const EdgeSet& realized,
                                        const EdgePartition& part,
                                        const VertexBudgets& bud,
                                        double epsilon, double tau) {
  require_sizes(g, bud);
  require_epsilon(epsilon);
  const double p = g.p();
  const double cap = 2.0 * tau / p;
  std::vector<EdgeId> ids;
  std::vector<double> base;
  for (EdgeId e : realized.intersect(qs.edges)) {
    if (part.is_crucial(e)) continue;
    const double x = std::min(qs.frequency(e) / p, cap);
    if (x <= 0.0) continue;
    ids.push_back(e);
    base.push_back(x);
  }
  const Loads loads = loads_of(g, ids, base);
  std::vector<std::pair<EdgeId, double>> entries;
  entries.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Edge& edge = g.edge(ids[i]);
    double scale = 1.0;
    for (VertexId v : {edge.u, edge.v}) {
      const double budget = std::max(bud.qN[v], epsilon);
      scale = std::min(scale, budget / load_at(loads, v));
    }
    entries.push_back({ids[i], base[i] * scale});
  }
  return FractionalMatching(g.num_edges(), std::move(entries));
}

Matching sample_crucial_matching(const Graph& g, const QuerySet& qs,
                                 const EdgePartition& part,
                                 const EdgeSet& crucial_realization,
                                 const CounterStream& stream,
                                 MatchingSolver& solver) {
  const EdgeSet fixed_set = qs.edges.intersect(part.crucial);
  const EdgeSet fixed = crucial_realization.intersect(fixed_set);
  std::vector<EdgeId> drawn, kept;
  sample_all_edges(g, stream, drawn);
  kept.reserve(drawn.size());
  for (EdgeId e : drawn)
    if (!fixed_set.contains(e)) kept.push_back(e);
  std::vector<EdgeId> active;
  active.reserve(kept.size() + fixed.size());
  std::merge(kept.begin(), kept.end(), fixed.begin(), fixed.end(),
             std::back_inserter(active));
  const Matching full = solver.solve(active);
  Matching mu;
  for (EdgeId e : full.edges)
    if (fixed.contains(e)) {
      mu.edges.push_back(e);
      mu.weight += g.edge(e).w;
    }
  return mu;
}

FractionalMatching procedure_crucial_unweighted(const Graph& g,
                                                const Matching& mu,
                                                const VertexBudgets& bud,
                                                double epsilon) {
  require_sizes(g, bud);
  require_epsilon(epsilon);
  std::vector<std::pair<EdgeId, double>> entries;
  for (EdgeId e : mu.edges) {
    const Edge& edge = g.edge(e);
    const double room = std::min(1.0 - bud.qN[edge.u], 1.0 - bud.qN[edge.v]);
    entries.push_back({e, (1.0 - epsilon) * std::max(0.0, room)});
  }
  return FractionalMatching(g.num_edges(), std::move(entries));
}

double weighted_alpha(double qN_u, double qwN_u, double qN_v, double qwN_v,
                      double weight) {
  auto objective = [&](double alpha) {
    double total = alpha * weight;
    if (qN_u > 0.0) total += std::min(qN_u, 1.0 - alpha) / qN_u * qwN_u;
    if (qN_v > 0.0) total += std::min(qN_v, 1.0 - alpha) / qN_v * qwN_v;
    return total;
  };
  std::array<double, 4> points{0.0, 1.0 - qN_v, 1.0 - qN_u, 1.0};
  for (double& a : points) a = std::clamp(a, 0.0, 1.0);
  std::sort(points.begin(), points.end());
  double best_alpha = points[0];
  double best = objective(best_alpha);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double f = objective(points[i]);
    const double tol = kTolerance * std::max(1.0, std::abs(best));
    if (f >= best - tol) {
      best_alpha = points[i];
      best = std::max(best, f);
    }
  }
  return best_alpha;
}

FractionalMatching procedure_crucial_weighted(const Graph& g,
                                              const Matching& mu,
                                              const VertexBudgets& bud,
                                              const FractionalMatching& xN,
                                              double epsilon) {
  require_sizes(g, bud);
  require_epsilon(epsilon);
  std::vector<EdgeId> cids;
  std::vector<double> cvals;
  for (EdgeId e : mu.edges) {
    if (xN.value(e) != 0.0)
      throw Error(ErrorKind::kInvalidArgument,
                  "edge " + std::to_string(e) +
                      " appears in both the matching and xN");
    const Edge& edge = g.edge(e);
    cids.push_back(e);
    cvals.push_back((1.0 - epsilon) * weighted_alpha(bud.qN[edge.u],
                                                     bud.qwN[edge.u],
                                                     bud.qN[edge.v],
                                                     bud.qwN[edge.v], edge.w));
  }
  const Loads crucial_loads = loads_of(g, cids, cvals);
  const Loads noncrucial_loads = loads_of(g, xN.ids(), xN.values());
  std::vector<std::pair<EdgeId, double>> entries;
  entries.reserve(cids.size() + xN.size());
  for (std::size_t i = 0; i < cids.size(); ++i)
    entries.push_back({cids[i], cvals[i]});
  for (std::size_t i = 0; i < xN.size(); ++i) {
    const Edge& edge = g.edge(xN.ids()[i]);
    double scale = 1.0;
    for (VertexId v : {edge.u, edge.v}) {
      const double xc = load_at(crucial_loads, v);
      const double xn = load_at(noncrucial_loads, v);
      if (xc + xn > 1.0 && xn > 0.0)
        scale = std::min(scale, std::max(0.0, 1.0 - xc) / xn);
    }
    entries.push_back({xN.ids()[i], xN.values()[i] * scale});
  }
  return FractionalMatching(g.num_edges(), std::move(entries));
}

ValidityReport check_fractional_validity(const Graph& g,
                                         const FractionalMatching& x) {
  ValidityReport report;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.values()[i] < 0.0) report.negative.push_back(x.ids()[i]);
  for (const auto& [v, load] : vertex_loads(g, x))
    if (load > 1.0 + kTolerance) report.overloaded.push_back({v, load});
  return report;
}

namespace {

// Enumerates every connected vertex set once (ESU order), pruning branches
// that cannot reach a violated bound.
class BlossomSearch {
 public:
  BlossomSearch(const Graph& g, const FractionalMatching& x,
                std::size_t max_size, std::optional<double> epsilon,
                std::uint64_t work_limit, BlossomReport& report)
      : max_size_(max_size),
        epsilon_(epsilon),
        work_limit_(work_limit),
        report_(report) {
    std::vector<VertexId> touched;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x.values()[i] == 0.0) continue;
      touched.push_back(g.edge(x.ids()[i]).u);
      touched.push_back(g.edge(x.ids()[i]).v);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    global_ = touched;
    const std::size_t n = global_.size();
    adj_.resize(n);
    load_.assign(n, 0.0);
    auto local = [&](VertexId v) {
      return static_cast<int>(
          std::lower_bound(global_.begin(), global_.end(), v) -
          global_.begin());
    };
    double xmax = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double val = x.values()[i];
      if (val == 0.0) continue;
      const int a = local(g.edge(x.ids()[i]).u);
      const int b = local(g.edge(x.ids()[i]).v);
      adj_[a].push_back({b, val});
      adj_[b].push_back({a, val});
      load_[a] += val;
      load_[b] += val;
      xmax = std::max(xmax, val);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
    std::vector<double> gain(n), loads = load_;
    for (std::size_t i = 0; i < n; ++i)
      gain[i] = std::max(
          0.0, std::min(load_[i], static_cast<double>(max_size_ - 1) * xmax));
    std::sort(gain.begin(), gain.end(), std::greater<>());
    std::sort(loads.begin(), loads.end(), std::greater<>());
    top_gain_.assign(max_size_ + 1, 0.0);
    top_load_.assign(max_size_ + 1, 0.0);
    for (std::size_t k = 1; k <= max_size_; ++k) {
      top_gain_[k] = top_gain_[k - 1] + (k <= n ? gain[k - 1] : 0.0);
      top_load_[k] = top_load_[k - 1] + (k <= n ? std::max(0.0, loads[k - 1]) : 0.0);
    }
    mark_.assign(n, 0);
    in_set_.assign(n, 0);
  }

  void run() {
    for (int v0 = 0; v0 < static_cast<int>(adj_.size()); ++v0) {
      root_ = v0;
      add(v0);
      std::vector<int> ext;
      for (auto [u, val] : adj_[v0])
        if (u > v0) ext.push_back(u);
      visit(ext, 0.0, load_[v0]);
      remove(v0);
    }
  }

 private:
  bool checked(std::size_t s) const {
    return epsilon_ ? s >= 2 : (s >= 3 && s % 2 == 1);
  }
  double limit(std::size_t s) const {
    const double half = static_cast<double>(s / 2);
    return epsilon_ ? *epsilon_ * half : half;
  }

  void add(int w) {
    in_set_[w] = 1;
    set_.push_back(w);
    ++mark_[w];
    for (auto [u, val] : adj_[w]) ++mark_[u];
  }
  void remove(int w) {
    in_set_[w] = 0;
    set_.pop_back();
    --mark_[w];
    for (auto [u, val] : adj_[w]) --mark_[u];
  }

  void visit(std::vector<int> ext, double value, double set_load) {
    const std::size_t s = set_.size();
    if (++report_.sets_examined > work_limit_)
      throw SizeLimitError("check_blossom_inequalities: search too large",
                           report_.sets_examined, work_limit_);
    if (checked(s) && value > limit(s) + kTolerance) {
      ++report_.violation_count;
      if (report_.violations.size() < BlossomReport::kMaxReported) {
        BlossomViolation viol;
        for (int w : set_) viol.vertices.push_back(global_[w]);
        std::sort(viol.vertices.begin(), viol.vertices.end());
        viol.value = value;
        viol.bound = limit(s);
        report_.violations.push_back(std::move(viol));
      }
    }
    if (s == max_size_) return;
    bool reachable = false;
    for (std::size_t k = 1; s + k <= max_size_ && !reachable; ++k) {
      if (!checked(s + k)) continue;
      const double best = std::min(value + top_gain_[k],
                                   0.5 * (set_load + top_load_[k]));
      reachable = best > limit(s + k) + kTolerance;
    }
    if (!reachable) return;
    while (!ext.empty()) {
      const int w = ext.back();
      ext.pop_back();
      std::vector<int> next = ext;
      double gain = 0.0;
      for (auto [u, val] : adj_[w]) {
        if (in_set_[u]) gain += val;
        else if (u > root_ && mark_[u] == 0) next.push_back(u);
      }
      add(w);
      visit(std::move(next), value + gain, set_load + load_[w]);
      remove(w);
    }
  }

  std::size_t max_size_;
  std::optional<double> epsilon_;
  std::uint64_t work_limit_;
  BlossomReport& report_;
  std::vector<VertexId> global_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  std::vector<double> load_, top_gain_, top_load_;
  std::vector<int> mark_, set_;
  std::vector<char> in_set_;
  int root_ = 0;
};

}  // namespace

BlossomReport check_blossom_inequalities(const Graph& g,
                                         const FractionalMatching& x,
                                         std::size_t max_set_size,
                                         std::optional<double> epsilon,
                                         std::uint64_t work_limit) {
  if (max_set_size > kMaxBlossomSetSize)
    throw SizeLimitError("check_blossom_inequalities: max_set_size",
                         max_set_size, kMaxBlossomSetSize);
  if (epsilon && !(*epsilon >= 0.0))
    throw ParameterError(ErrorKind::kInvalidArgument,
                         "blossom check: epsilon must be non-negative");
  BlossomReport report;
  if (max_set_size < 2) return report;
  BlossomSearch search(g, x, max_set_size, epsilon, work_limit, report);
  search.run();
  return report;
}

double mathratio(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty())
    throw Error(ErrorKind::kInvalidArgument,
                "mathratio: need two non-empty sequences of equal length");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += a[i] * b[i];
    den += a[i] + b[i] / 2.0;
  }
  return den > 0.0 ? num / den : 0.0;
}

double verify_mathratio(std::uint64_t samples, std::uint64_t seed) {
  double best = 0.0;
  constexpr int kGrid = 400;
  std::vector<double> a(1), b(1);
  for (int i = 0; i <= kGrid; ++i)
    for (int j = 0; i + j <= kGrid; ++j) {
      a[0] = static_cast<double>(i) / kGrid;
      b[0] = static_cast<double>(j) / kGrid;
      best = std::max(best, mathratio(a, b));
    }
  StreamEngine rng(seed, Domain::kMisc, 0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t n = 1 + rng() % 8;
    a.assign(n, 0.0);
    b.assign(n, 0.0);
    const bool on_boundary = rng() & 1;
    for (std::size_t i = 0; i < n; ++i) {
      double x = rng.uniform(), y = rng.uniform();
      if (x + y > 1.0) {
        x = 1.0 - x;
        y = 1.0 - y;
      }
      if (on_boundary) y = 1.0 - x;
      a[i] = x;
      b[i] = y;
    }
    best = std::max(best, mathratio(a, b));
  }
  return best;
}

double single_vertex_ratio(double delta, double qN) {
  const double c = 2.0 * (1.0 + delta) * (1.0 - qN);
  return c * (delta + qN) / (0.5 + c);
}

double max_single_vertex_ratio(double delta) {
  constexpr int kGrid = 100000;
  int best_i = 0;
  double best = single_vertex_ratio(delta, 0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double f = single_vertex_ratio(delta, static_cast<double>(i) / kGrid);
    if (f > best) {
      best = f;
      best_i = i;
    }
  }
  double lo = std::max(0.0, (best_i - 1.0) / kGrid);
  double hi = std::min(1.0, (best_i + 1.0) / kGrid);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = hi - golden * (hi - lo);
    const double m2 = lo + golden * (hi - lo);
    if (single_vertex_ratio(delta, m1) < single_vertex_ratio(delta, m2))
      lo = m1;
    else
      hi = m2;
  }
  return std::max(best, single_vertex_ratio(delta, 0.5 * (lo + hi)));
}

std::vector<EdgeId> check_heavy_contributions(const Graph& g,
                                              const EdgePartition& part,
                                              const VertexBudgets& bud,
                                              double epsilon) {
  require_sizes(g, bud);
  std::vector<EdgeId> failures;
  const double delta = part.delta;
  for (EdgeId e : part.heavy) {
    const Edge& edge = g.edge(e);
    const double lhs = (1.0 - epsilon) * edge.w - (bud.qwN[edge.u] + bud.qwN[edge.v]);
    const double rhs = (delta / (1.0 + delta) - epsilon) * edge.w;
    if (lhs < rhs - kTolerance * std::max(1.0, edge.w)) failures.push_back(e);
  }
  return failures;
}

}  // namespace stochmatch
