#include "stochmatch/experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stochmatch/algorithms.hpp"
#include "stochmatch/fractional.hpp"
#include "stochmatch/generators.hpp"
#include "stochmatch/graph_io.hpp"
#include "stochmatch/parallel.hpp"

namespace stochmatch {

using Json = nlohmann::ordered_json;

namespace {

// Salts for the sub-seeds of one experiment.
constexpr std::uint64_t kSaltStats = 1;
constexpr std::uint64_t kSaltAnalysis = 2;
constexpr std::uint64_t kSaltBuild = 1000;
constexpr std::uint64_t kSaltEvaluate = 2000000;
constexpr std::uint64_t kSaltAdaptive = 4000000;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::kConfig, "config: " + what);
}

bool is_algorithm(const std::string& name) {
  return name == "nonadaptive" || name == "baseline_default" ||
         name == "baseline_adversarial" || name == "adaptive";
}

}  // namespace

void validate_config(const ExperimentConfig& c) {
  const InstanceSpec& in = c.instance;
  if (in.generator == "tightness") {
    if (in.L < 1) config_error("instance.L must be >= 1");
  } else if (in.generator == "blum_bad") {
    if (in.N < 1) config_error("instance.N must be >= 1");
  } else if (in.generator == "star") {
    if (in.leaves < 0) config_error("instance.leaves must be >= 0");
  } else if (in.generator == "random") {
    if (in.n < 2) config_error("instance.n must be >= 2");
    if (!(in.density > 0.0 && in.density <= 1.0))
      config_error("instance.density must lie in (0, 1]");
    if (in.weights != "unit" && in.weights != "uniform")
      config_error("instance.weights must be 'unit' or 'uniform'");
  } else if (in.generator == "file") {
    if (in.path.empty()) config_error("instance.path is required for 'file'");
  } else {
    config_error("unknown instance generator '" + in.generator + "'");
  }
  if (!is_algorithm(c.algorithm))
    config_error("unknown algorithm '" + c.algorithm + "'");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0))
    config_error("epsilon must lie in (0, 1)");
  if (c.rounds && *c.rounds == 0) config_error("rounds must be >= 1");
  if (c.r_star == 0) config_error("r_star must be >= 1");
  if (c.stats_trials == 0) config_error("stats_trials must be >= 1");
  if (c.eval_trials == 0) config_error("eval_trials must be >= 1");
  if (c.runs == 0) config_error("runs must be >= 1");
  const AnalysisSpec& a = c.analysis;
  if (a.procedures) {
    if (c.algorithm == "adaptive")
      config_error("analysis procedures need a query set; not available for "
                   "the adaptive algorithm");
    if (a.runs == 0) config_error("analysis.runs must be >= 1");
    if (a.epsilon && !(*a.epsilon > 0.0 && *a.epsilon <= std::exp(-1.0)))
      config_error("analysis.epsilon must lie in (0, 1/e]");
    if (a.tau && !(*a.tau > 0.0)) config_error("analysis.tau must be positive");
    if (!(a.delta > 0.0)) config_error("analysis.delta must be positive");
    if (a.blossom_max_set > kMaxBlossomSetSize)
      config_error("analysis.blossom_max_set must be <= 9");
  }
}

Graph build_instance(const InstanceSpec& in) {
  if (in.generator == "tightness") return gen_tightness_instance(in.L);
  if (in.generator == "blum_bad") return gen_blum_bad_instance(in.N);
  if (in.generator == "star")
    return gen_weighted_star(in.leaves, in.heavy_weight, in.q_target);
  if (in.generator == "random") {
    const WeightMode mode = in.weights == "unit"
                                ? WeightMode::unit()
                                : WeightMode::uniform(in.lo, in.hi);
    return gen_random_graph(in.n, in.density, mode, in.p, in.graph_seed);
  }
  if (in.generator == "file") return read_graph(in.path);
  config_error("unknown instance generator '" + in.generator + "'");
}

namespace {

struct AnalysisSums {
  double p1 = 0, p1_sq = 0, p2 = 0, p2_sq = 0, p3 = 0, p3_sq = 0;
  std::uint64_t validity = 0, procedure1 = 0, blossom = 0;
};

AnalysisReport run_analysis(const Graph& g, const EdgeStats& stats,
                            const QuerySet& qs, const AnalysisSpec& spec,
                            double epsilon, double tau, double opt,
                            std::uint64_t seed, unsigned workers) {
  AnalysisReport rep;
  rep.epsilon = epsilon;
  rep.tau = tau;
  rep.delta = spec.delta;
  rep.runs = spec.runs;
  Classification cls = classify_edges(g, stats, tau);
  EdgePartition& part = cls.partition;
  VertexBudgets& bud = cls.budgets;
  classify_heavy_semiheavy(g, stats, part, bud, spec.delta);
  rep.crucial = part.crucial.size();
  rep.noncrucial = part.noncrucial.size();
  rep.heavy = part.heavy.size();
  rep.semiheavy = part.semiheavy.size();
  rep.cstar = part.cstar.size();
  rep.qw_noncrucial = stats.qw_sum(part.noncrucial);
  rep.qw_crucial = stats.qw_sum(part.crucial);
  rep.qw_heavy = stats.qw_sum(part.heavy);
  rep.qw_semiheavy = stats.qw_sum(part.semiheavy);
  rep.qw_cstar = stats.qw_sum(part.cstar);
  rep.qw_sampled_crucial = stats.qw_sum(qs.edges.intersect(part.crucial));
  if (spec.checks)
    rep.heavy_failures =
        check_heavy_contributions(g, part, bud, epsilon).size();

  const double cap = 2.0 * tau / g.p();
  const std::size_t chunks = static_cast<std::size_t>(
      (spec.runs + kTrialsPerChunk - 1) / kTrialsPerChunk);
  std::vector<AnalysisSums> sums(chunks);
  std::vector<MatchingSolver> solvers;
  const unsigned nw = resolve_workers(workers);
  for (unsigned w = 0; w < nw; ++w) solvers.emplace_back(g);
  parallel_chunks(chunks, workers, [&](std::size_t c, unsigned w) {
    AnalysisSums& s = sums[c];
    const std::uint64_t end = std::min(spec.runs, (c + 1) * kTrialsPerChunk);
    for (std::uint64_t t = c * kTrialsPerChunk; t < end; ++t) {
      const EdgeSet realized =
          sample_realization(g, CounterStream(seed, Domain::kProcedure, t));
      const FractionalMatching xN =
          procedure_noncrucial(g, qs, realized, part, bud, epsilon, tau);
      const Matching mu = sample_crucial_matching(
          g, qs, part, realized, CounterStream(seed, Domain::kConditional, t),
          solvers[w]);
      const FractionalMatching x2 =
          combine(xN, procedure_crucial_unweighted(g, mu, bud, epsilon));
      const FractionalMatching x3 =
          procedure_crucial_weighted(g, mu, bud, xN, epsilon);
      const double v1 = fractional_weight(xN, g);
      const double v2 = fractional_weight(x2, g);
      const double v3 = fractional_weight(x3, g);
      s.p1 += v1;
      s.p1_sq += v1 * v1;
      s.p2 += v2;
      s.p2_sq += v2 * v2;
      s.p3 += v3;
      s.p3_sq += v3 * v3;
      if (!spec.checks) continue;
      if (!check_fractional_validity(g, x2).ok()) ++s.validity;
      if (!check_fractional_validity(g, x3).ok()) ++s.validity;
      bool p1_ok = true;
      for (std::size_t i = 0; i < xN.size(); ++i) {
        const EdgeId e = xN.ids()[i];
        if (part.is_crucial(e) || !qs.edges.contains(e) ||
            !realized.contains(e) || xN.values()[i] > cap * (1 + 1e-12))
          p1_ok = false;
      }
      for (const auto& [v, load] : vertex_loads(g, xN))
        if (load > std::max(bud.qN[v], epsilon) + 1e-12) p1_ok = false;
      if (!p1_ok) ++s.procedure1;
      if (spec.blossom_max_set >= 2 &&
          !check_blossom_inequalities(g, xN, spec.blossom_max_set, epsilon)
               .ok())
        ++s.blossom;
    }
  });
  AnalysisSums total;
  for (const AnalysisSums& s : sums) {
    total.p1 += s.p1;
    total.p1_sq += s.p1_sq;
    total.p2 += s.p2;
    total.p2_sq += s.p2_sq;
    total.p3 += s.p3;
    total.p3_sq += s.p3_sq;
    total.validity += s.validity;
    total.procedure1 += s.procedure1;
    total.blossom += s.blossom;
  }
  rep.procedure1 = summarize(total.p1, total.p1_sq, spec.runs);
  rep.procedure2 = summarize(total.p2, total.p2_sq, spec.runs);
  rep.procedure3 = summarize(total.p3, total.p3_sq, spec.runs);
  rep.ratio1 = rep.qw_noncrucial > 0 ? rep.procedure1.mean / rep.qw_noncrucial : 0.0;
  rep.ratio2 = opt > 0 ? rep.procedure2.mean / opt : 0.0;
  rep.ratio3 = opt > 0 ? rep.procedure3.mean / opt : 0.0;
  rep.validity_violations = total.validity;
  rep.procedure1_violations = total.procedure1;
  rep.blossom_violations = total.blossom;
  return rep;
}

Estimate combine_runs(const std::vector<Estimate>& per_run) {
  if (per_run.size() == 1) return per_run[0];
  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t trials = 0;
  for (const Estimate& e : per_run) {
    sum += e.mean;
    sum_sq += e.mean * e.mean;
    trials += e.trials;
  }
  Estimate out = summarize(sum, sum_sq, per_run.size());
  out.trials = trials;
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config,
                                unsigned workers) {
  validate_config(config);
  const Graph g = build_instance(config.instance);
  ExperimentReport rep;
  rep.config = config;
  rep.vertices = g.num_vertices();
  rep.edges = g.num_edges();
  rep.p = g.p();
  rep.max_weight = g.max_weight();
  const std::uint64_t seed = config.seed;
  const EdgeStats stats = estimate_match_probs(
      g, config.stats_trials, derive_seed(seed, kSaltStats), workers);
  rep.opt = stats.opt;

  std::optional<QuerySet> first;
  if (config.algorithm == "adaptive") {
    std::vector<AdaptiveResult> results(config.runs);
    parallel_chunks(config.runs, workers, [&](std::size_t r, unsigned) {
      results[r] = run_adaptive(g, config.epsilon, config.r_star,
                                derive_seed(seed, kSaltAdaptive + r));
    });
    double sum = 0.0, sum_sq = 0.0, qmax = 0.0, queries = 0.0;
    for (const AdaptiveResult& res : results) {
      sum += res.matched_weight;
      sum_sq += res.matched_weight * res.matched_weight;
      qmax += res.queries_per_vertex;
      queries += static_cast<double>(res.total_queries);
    }
    const auto runs = static_cast<double>(config.runs);
    rep.value = summarize(sum, sum_sq, config.runs);
    rep.rounds = results[0].rounds;
    rep.max_queries_per_vertex = qmax / runs;
    rep.queried_edges = queries / runs;
    rep.mean_queries_per_vertex =
        g.num_vertices() > 0 ? 2.0 * rep.queried_edges / g.num_vertices() : 0.0;
  } else {
    std::uint64_t rounds;
    if (config.algorithm == "nonadaptive") {
      rounds = resolve_rounds(
          AlgorithmParams{config.epsilon, config.rounds, seed, workers}, g.p());
    } else {
      rounds = config.rounds ? *config.rounds : compute_R(config.epsilon, g.p());
    }
    rep.config.rounds = rounds;
    rep.rounds = rounds;
    std::vector<Estimate> per_run;
    double qmax = 0.0, qmean = 0.0, queried = 0.0;
    for (std::uint64_t r = 0; r < config.runs; ++r) {
      QuerySet qs;
      if (config.algorithm == "nonadaptive") {
        qs = run_nonadaptive(g, AlgorithmParams{config.epsilon, rounds,
                                                derive_seed(seed, kSaltBuild + r),
                                                workers});
      } else if (first) {
        qs = *first;  // the baselines are deterministic
      } else {
        qs = run_baseline_greedy(g, rounds,
                                 config.algorithm == "baseline_adversarial"
                                     ? MatchingSelector::kAdversarialFig2
                                     : MatchingSelector::kDefault);
      }
      per_run.push_back(evaluate_query_set(g, qs.edges, config.eval_trials,
                                           derive_seed(seed, kSaltEvaluate + r),
                                           workers));
      qmax += qs.max_degree();
      qmean += qs.mean_degree();
      queried += static_cast<double>(qs.edges.size());
      if (!first) first = std::move(qs);
    }
    const auto runs = static_cast<double>(config.runs);
    rep.value = combine_runs(per_run);
    rep.max_queries_per_vertex = qmax / runs;
    rep.mean_queries_per_vertex = qmean / runs;
    rep.queried_edges = queried / runs;
  }
  if (rep.opt.mean > 0.0) {
    rep.ratio = rep.value.mean / rep.opt.mean;
    const double rv = rep.value.mean > 0 ? rep.value.std_error / rep.value.mean : 0.0;
    const double ro = rep.opt.std_error / rep.opt.mean;
    rep.ratio_std_error = rep.ratio * std::sqrt(rv * rv + ro * ro);
  }
  if (config.analysis.procedures) {
    const double eps =
        config.analysis.epsilon ? *config.analysis.epsilon : config.epsilon;
    const double tau =
        config.analysis.tau ? *config.analysis.tau : compute_tau(eps, g.p());
    rep.config.analysis.epsilon = eps;
    rep.config.analysis.tau = tau;
    rep.analysis = run_analysis(g, stats, *first, config.analysis, eps, tau,
                                rep.opt.mean, derive_seed(seed, kSaltAnalysis),
                                workers);
  }
  return rep;
}

// ---- JSON ----

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json estimate_json(const Estimate& e) {
  return Json{{"mean", e.mean}, {"std_error", e.std_error}, {"trials", e.trials}};
}

Estimate estimate_from(const Json& j) {
  Estimate e;
  e.mean = j.at("mean").get<double>();
  e.std_error = j.at("std_error").get<double>();
  e.trials = j.at("trials").get<std::uint64_t>();
  return e;
}

Json config_json(const ExperimentConfig& c) {
  const InstanceSpec& in = c.instance;
  const AnalysisSpec& a = c.analysis;
  Json instance{{"generator", in.generator}};
  if (in.generator == "tightness") instance["L"] = in.L;
  if (in.generator == "blum_bad") instance["N"] = in.N;
  if (in.generator == "star") {
    instance["leaves"] = in.leaves;
    instance["heavy_weight"] = in.heavy_weight;
    instance["q_target"] = in.q_target;
  }
  if (in.generator == "random") {
    instance["n"] = in.n;
    instance["density"] = in.density;
    instance["weights"] = in.weights;
    instance["lo"] = in.lo;
    instance["hi"] = in.hi;
    instance["p"] = in.p;
    instance["graph_seed"] = in.graph_seed;
  }
  if (in.generator == "file") instance["path"] = in.path;
  return Json{{"instance", instance},
              {"algorithm", c.algorithm},
              {"epsilon", c.epsilon},
              {"rounds", optional_json(c.rounds)},
              {"r_star", c.r_star},
              {"stats_trials", c.stats_trials},
              {"eval_trials", c.eval_trials},
              {"runs", c.runs},
              {"seed", c.seed},
              {"analysis",
               {{"procedures", a.procedures},
                {"runs", a.runs},
                {"epsilon", optional_json(a.epsilon)},
                {"tau", optional_json(a.tau)},
                {"delta", a.delta},
                {"checks", a.checks},
                {"blossom_max_set", a.blossom_max_set}}}};
}

// Reads `key` into `out` when present; rejects keys outside `allowed`.
void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!j.is_object()) config_error(where + " must be an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) config_error("unknown key '" + item.key() + "' in " + where);
  }
}

template <class T>
void read_field(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
void read_optional(const Json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T value{};
  read_field(j, key, value);
  out = value;
}

ExperimentConfig config_from(const Json& j) {
  reject_unknown(j,
                 {"instance", "algorithm", "epsilon", "rounds", "r_star",
                  "stats_trials", "eval_trials", "runs", "seed", "analysis"},
                 "config");
  ExperimentConfig c;
  if (!j.contains("seed")) config_error("'seed' is required");
  if (j.contains("instance")) {
    const Json& in = j.at("instance");
    reject_unknown(in,
                   {"generator", "L", "N", "leaves", "heavy_weight", "q_target",
                    "n", "density", "weights", "lo", "hi", "p", "graph_seed",
                    "path"},
                   "instance");
    InstanceSpec& s = c.instance;
    read_field(in, "generator", s.generator);
    read_field(in, "L", s.L);
    read_field(in, "N", s.N);
    read_field(in, "leaves", s.leaves);
    read_field(in, "heavy_weight", s.heavy_weight);
    read_field(in, "q_target", s.q_target);
    read_field(in, "n", s.n);
    read_field(in, "density", s.density);
    read_field(in, "weights", s.weights);
    read_field(in, "lo", s.lo);
    read_field(in, "hi", s.hi);
    read_field(in, "p", s.p);
    read_field(in, "graph_seed", s.graph_seed);
    read_field(in, "path", s.path);
  }
  read_field(j, "algorithm", c.algorithm);
  read_field(j, "epsilon", c.epsilon);
  read_optional(j, "rounds", c.rounds);
  read_field(j, "r_star", c.r_star);
  read_field(j, "stats_trials", c.stats_trials);
  read_field(j, "eval_trials", c.eval_trials);
  read_field(j, "runs", c.runs);
  read_field(j, "seed", c.seed);
  if (j.contains("analysis")) {
    const Json& a = j.at("analysis");
    reject_unknown(a,
                   {"procedures", "runs", "epsilon", "tau", "delta", "checks",
                    "blossom_max_set"},
                   "analysis");
    read_field(a, "procedures", c.analysis.procedures);
    read_field(a, "runs", c.analysis.runs);
    read_optional(a, "epsilon", c.analysis.epsilon);
    read_optional(a, "tau", c.analysis.tau);
    read_field(a, "delta", c.analysis.delta);
    read_field(a, "checks", c.analysis.checks);
    read_field(a, "blossom_max_set", c.analysis.blossom_max_set);
  }
  validate_config(c);
  return c;
}

Json analysis_json(const AnalysisReport& a) {
  return Json{{"epsilon", a.epsilon},
              {"tau", a.tau},
              {"delta", a.delta},
              {"runs", a.runs},
              {"counts",
               {{"crucial", a.crucial},
                {"noncrucial", a.noncrucial},
                {"heavy", a.heavy},
                {"semiheavy", a.semiheavy},
                {"cstar", a.cstar}}},
              {"qw",
               {{"noncrucial", a.qw_noncrucial},
                {"crucial", a.qw_crucial},
                {"heavy", a.qw_heavy},
                {"semiheavy", a.qw_semiheavy},
                {"cstar", a.qw_cstar},
                {"sampled_crucial", a.qw_sampled_crucial}}},
              {"procedure1", estimate_json(a.procedure1)},
              {"procedure2", estimate_json(a.procedure2)},
              {"procedure3", estimate_json(a.procedure3)},
              {"ratio1", a.ratio1},
              {"ratio2", a.ratio2},
              {"ratio3", a.ratio3},
              {"checks",
               {{"validity_violations", a.validity_violations},
                {"procedure1_violations", a.procedure1_violations},
                {"blossom_violations", a.blossom_violations},
                {"heavy_failures", a.heavy_failures}}}};
}

AnalysisReport analysis_from(const Json& j) {
  AnalysisReport a;
  a.epsilon = j.at("epsilon").get<double>();
  a.tau = j.at("tau").get<double>();
  a.delta = j.at("delta").get<double>();
  a.runs = j.at("runs").get<std::uint64_t>();
  const Json& n = j.at("counts");
  a.crucial = n.at("crucial").get<std::uint64_t>();
  a.noncrucial = n.at("noncrucial").get<std::uint64_t>();
  a.heavy = n.at("heavy").get<std::uint64_t>();
  a.semiheavy = n.at("semiheavy").get<std::uint64_t>();
  a.cstar = n.at("cstar").get<std::uint64_t>();
  const Json& q = j.at("qw");
  a.qw_noncrucial = q.at("noncrucial").get<double>();
  a.qw_crucial = q.at("crucial").get<double>();
  a.qw_heavy = q.at("heavy").get<double>();
  a.qw_semiheavy = q.at("semiheavy").get<double>();
  a.qw_cstar = q.at("cstar").get<double>();
  a.qw_sampled_crucial = q.at("sampled_crucial").get<double>();
  a.procedure1 = estimate_from(j.at("procedure1"));
  a.procedure2 = estimate_from(j.at("procedure2"));
  a.procedure3 = estimate_from(j.at("procedure3"));
  a.ratio1 = j.at("ratio1").get<double>();
  a.ratio2 = j.at("ratio2").get<double>();
  a.ratio3 = j.at("ratio3").get<double>();
  const Json& c = j.at("checks");
  a.validity_violations = c.at("validity_violations").get<std::uint64_t>();
  a.procedure1_violations = c.at("procedure1_violations").get<std::uint64_t>();
  a.blossom_violations = c.at("blossom_violations").get<std::uint64_t>();
  a.heavy_failures = c.at("heavy_failures").get<std::uint64_t>();
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) {
  return config_json(config).dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  return config_from(j);
}

ExperimentConfig read_config(const std::string& path) {
  return config_from_json(read_file(path));
}

std::string report_to_json(const ExperimentReport& r) {
  Json j{{"config", config_json(r.config)},
         {"graph",
          {{"vertices", r.vertices},
           {"edges", r.edges},
           {"p", r.p},
           {"max_weight", r.max_weight}}},
         {"opt", estimate_json(r.opt)},
         {"value", estimate_json(r.value)},
         {"ratio", r.ratio},
         {"ratio_std_error", r.ratio_std_error},
         {"rounds", r.rounds},
         {"queries",
          {{"max_per_vertex", r.max_queries_per_vertex},
           {"mean_per_vertex", r.mean_queries_per_vertex},
           {"edges", r.queried_edges}}},
         {"analysis", r.analysis ? analysis_json(*r.analysis) : Json(nullptr)}};
  if (r.wall_time_seconds) j["wall_time_seconds"] = *r.wall_time_seconds;
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
  ExperimentReport r;
  try {
    const Json j = Json::parse(text);
    r.config = config_from(j.at("config"));
    const Json& g = j.at("graph");
    r.vertices = g.at("vertices").get<int>();
    r.edges = g.at("edges").get<std::uint64_t>();
    r.p = g.at("p").get<double>();
    r.max_weight = g.at("max_weight").get<double>();
    r.opt = estimate_from(j.at("opt"));
    r.value = estimate_from(j.at("value"));
    r.ratio = j.at("ratio").get<double>();
    r.ratio_std_error = j.at("ratio_std_error").get<double>();
    r.rounds = j.at("rounds").get<std::uint64_t>();
    const Json& q = j.at("queries");
    r.max_queries_per_vertex = q.at("max_per_vertex").get<double>();
    r.mean_queries_per_vertex = q.at("mean_per_vertex").get<double>();
    r.queried_edges = q.at("edges").get<double>();
    if (!j.at("analysis").is_null()) r.analysis = analysis_from(j.at("analysis"));
    if (j.contains("wall_time_seconds"))
      r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("report: ") + e.what());
  }
  const double expected = r.opt.mean > 0.0 ? r.value.mean / r.opt.mean : 0.0;
  if (std::abs(expected - r.ratio) > 1e-12 * std::max(1.0, std::abs(expected)))
    throw Error(ErrorKind::kParse,
                "report: ratio " + format_double(r.ratio) +
                    " does not equal value / opt = " + format_double(expected));
  return r;
}

void write_report(const ExperimentReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  out << report_to_json(report);
  if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path + "'");
}

ExperimentReport read_report(const std::string& path) {
  return report_from_json(read_file(path));
}

std::string csv_header() {
  return "seed,instance,algorithm,epsilon,rounds,runs,opt,opt_std_error,value,"
         "value_std_error,ratio,ratio_std_error,max_queries_per_vertex,"
         "mean_queries_per_vertex,procedure1,procedure2,procedure3,ratio2,"
         "ratio3";
}

std::string csv_row(const ExperimentReport& r) {
  const ExperimentConfig& c = r.config;
  std::ostringstream row;
  auto num = [](double v) { return format_double(v); };
  row << c.seed << ',' << c.instance.generator << ',' << c.algorithm << ','
      << num(c.epsilon) << ',' << r.rounds << ',' << c.runs << ','
      << num(r.opt.mean) << ',' << num(r.opt.std_error) << ','
      << num(r.value.mean) << ',' << num(r.value.std_error) << ','
      << num(r.ratio) << ',' << num(r.ratio_std_error) << ','
      << num(r.max_queries_per_vertex) << ','
      << num(r.mean_queries_per_vertex) << ',';
  if (r.analysis) {
    const AnalysisReport& a = *r.analysis;
    row << num(a.procedure1.mean) << ',' << num(a.procedure2.mean) << ','
        << num(a.procedure3.mean) << ',' << num(a.ratio2) << ','
        << num(a.ratio3);
  } else {
    row << ",,,,";
  }
  return row.str();
}

void append_csv(const ExperimentReport& report, const std::string& path) {
  bool fresh = true;
  {
    std::ifstream probe(path, std::ios::ate);
    if (probe && probe.tellg() > 0) fresh = false;
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for appending");
  if (fresh) out << csv_header() << '\n';
  out << csv_row(report) << '\n';
}

}  // namespace stochmatch
