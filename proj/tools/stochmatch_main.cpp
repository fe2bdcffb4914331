// stochmatch command-line entry point.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stochmatch/algorithms.hpp"
#include "stochmatch/estimators.hpp"
#include "stochmatch/experiment.hpp"
#include "stochmatch/fractional.hpp"
#include "stochmatch/generators.hpp"
#include "stochmatch/graph_io.hpp"

namespace sm = stochmatch;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Check {
  int failures = 0;
  void report(bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    if (!ok) ++failures;
  }
};

void verify_mathratio(Check& check, std::uint64_t seed, std::uint64_t samples) {
  const double bound = 6.0 - 4.0 * std::sqrt(2.0);
  const double best = sm::verify_mathratio(samples, seed);
  check.report(best <= bound + 1e-9, "mathratio.max",
               "max " + sm::format_double(best) + " vs bound " +
                   sm::format_double(bound));
  const double at = sm::mathratio({std::sqrt(2.0) - 1.0}, {2.0 - std::sqrt(2.0)});
  check.report(std::abs(at - bound) <= 1e-12, "mathratio.extremal",
               "ratio at extremal point " + sm::format_double(at));
  const double sv = sm::max_single_vertex_ratio(0.1);
  const double closed = (171.0 - 10.0 * std::sqrt(146.0)) / 110.0;
  check.report(std::abs(sv - closed) <= 1e-9, "single_vertex.delta_0.1",
               "max " + sm::format_double(sv) + " vs closed form " +
                   sm::format_double(closed));
  const double sv09 = sm::max_single_vertex_ratio(0.09);
  check.report(sv09 < 0.5, "single_vertex.delta_0.09",
               "max " + sm::format_double(sv09) + " (must stay below 1/2)");
}

void verify_procedures(Check& check, std::uint64_t seed, unsigned workers) {
  std::uint64_t instances = 0, validity = 0, p1 = 0, blossom = 0, heavy = 0;
  for (int i = 0; i < 12; ++i) {
    const bool weighted = i % 2 == 1;
    const sm::Graph g = sm::gen_random_graph(
        8 + i % 4, 0.4,
        weighted ? sm::WeightMode::uniform(0.5, 4.0) : sm::WeightMode::unit(),
        0.3 + 0.05 * (i % 5), sm::derive_seed(seed, 100 + i));
    if (g.num_edges() == 0 || g.num_edges() > sm::kEnumerationEdgeLimit) continue;
    ++instances;
    const double eps = 1.0 / 3.0;
    const sm::EdgeStats stats = sm::exact_match_probs(g);
    const double tau = 0.05;
    auto cls = sm::classify_edges(g, stats, tau);
    sm::classify_heavy_semiheavy(g, stats, cls.partition, cls.budgets);
    heavy += sm::check_heavy_contributions(g, cls.partition, cls.budgets, eps).size();
    const sm::QuerySet qs = sm::run_nonadaptive(
        g, sm::AlgorithmParams{eps, 200, sm::derive_seed(seed, 200 + i), workers});
    sm::MatchingSolver solver(g);
    for (std::uint64_t t = 0; t < 200; ++t) {
      const sm::EdgeSet realized = sm::sample_realization(
          g, sm::CounterStream(seed + i, sm::Domain::kProcedure, t));
      const auto xN = sm::procedure_noncrucial(g, qs, realized, cls.partition,
                                               cls.budgets, eps, tau);
      const auto mu = sm::sample_crucial_matching(
          g, qs, cls.partition, realized,
          sm::CounterStream(seed + i, sm::Domain::kConditional, t), solver);
      const auto x2 = sm::combine(
          xN, sm::procedure_crucial_unweighted(g, mu, cls.budgets, eps));
      const auto x3 = sm::procedure_crucial_weighted(g, mu, cls.budgets, xN, eps);
      if (!sm::check_fractional_validity(g, x2).ok()) ++validity;
      if (!sm::check_fractional_validity(g, x3).ok()) ++validity;
      for (const auto& [v, load] : sm::vertex_loads(g, xN))
        if (load > std::max(cls.budgets.qN[v], eps) + 1e-12) ++p1;
      if (!sm::check_blossom_inequalities(g, xN, 9, eps).ok()) ++blossom;
      if (!sm::check_blossom_inequalities(g, x2, 9).ok()) ++blossom;
    }
  }
  check.report(instances > 0 && validity == 0, "procedures.validity",
               std::to_string(validity) + " invalid outputs over " +
                   std::to_string(instances) + " instances");
  check.report(p1 == 0, "procedures.noncrucial_budget",
               std::to_string(p1) + " budget violations");
  check.report(blossom == 0, "procedures.blossom",
               std::to_string(blossom) + " blossom violations");
  check.report(heavy == 0, "procedures.heavy_contribution",
               std::to_string(heavy) + " heavy edges below the bound");
}

void verify_oracle(Check& check, std::uint64_t seed, unsigned workers) {
  int mismatches = 0, graphs = 0, outside = 0;
  for (int i = 0; i < 200; ++i) {
    const bool weighted = i % 2 == 0;
    const sm::Graph g = sm::gen_random_graph(
        6 + i % 5, 0.5,
        weighted ? sm::WeightMode::uniform(0.5, 3.0) : sm::WeightMode::unit(),
        0.5, sm::derive_seed(seed, i));
    if (g.num_edges() > 14) continue;
    ++graphs;
    sm::MatchingSolver solver(g);
    for (std::uint64_t t = 0; t < 8; ++t) {
      const sm::EdgeSet active =
          sm::sample_realization(g, sm::CounterStream(seed, sm::Domain::kMisc, t));
      if (!(solver.solve(active) == sm::brute_force_matching(g, active)))
        ++mismatches;
    }
    if (i % 20 == 0) {
      const double exact = sm::exact_expected_matching(g, sm::EdgeSet::all(g));
      const sm::Estimate mc = sm::estimate_opt_mc(g, 20000, seed + i, workers);
      if (std::abs(mc.mean - exact) > 4.0 * mc.std_error + 1e-12) ++outside;
    }
  }
  check.report(mismatches == 0, "oracle.solver_vs_brute_force",
               std::to_string(mismatches) + " mismatches over " +
                   std::to_string(graphs) + " graphs");
  check.report(outside == 0, "oracle.mc_vs_exact",
               std::to_string(outside) + " estimates outside 4 sigma");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic matching experiments"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance graph");
  sm::InstanceSpec spec;
  std::string gen_out;
  gen->add_option("--instance", spec.generator, "tightness|blum_bad|star|random")
      ->required()
      ->check(CLI::IsMember({"tightness", "blum_bad", "star", "random"}));
  gen->add_option("--L", spec.L, "tightness group size");
  gen->add_option("--N", spec.N, "blum_bad group size");
  gen->add_option("--k,--leaves", spec.leaves, "star leaves");
  gen->add_option("--heavy-weight", spec.heavy_weight);
  gen->add_option("--q-target", spec.q_target);
  gen->add_option("--n", spec.n, "random: vertices");
  gen->add_option("--density", spec.density);
  gen->add_option("--weights", spec.weights)->check(CLI::IsMember({"unit", "uniform"}));
  gen->add_option("--lo", spec.lo);
  gen->add_option("--hi", spec.hi);
  gen->add_option("--p", spec.p);
  gen->add_option("--seed", spec.graph_seed);
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Estimate q_e and qw_e per edge");
  std::string stats_graph, stats_out;
  std::uint64_t stats_trials = 10000, stats_seed = 1;
  unsigned stats_workers = 0;
  stats_cmd->add_option("-g,--graph", stats_graph)->required();
  stats_cmd->add_option("--trials", stats_trials);
  stats_cmd->add_option("--seed", stats_seed);
  stats_cmd->add_option("--workers", stats_workers);
  stats_cmd->add_option("-o,--output", stats_out, "CSV output (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  std::string config_path, report_path, csv_path;
  unsigned run_workers = 0;
  bool timing = false;
  std::optional<std::uint64_t> o_seed, o_runs, o_rounds, o_stats, o_eval;
  std::optional<double> o_eps;
  std::optional<std::string> o_alg;
  run->add_option("-c,--config", config_path)->required();
  run->add_option("-o,--output", report_path, "report file (default stdout)");
  run->add_option("--csv", csv_path, "append a summary row");
  run->add_option("--workers", run_workers);
  run->add_flag("--timing", timing, "add wall time to the report");
  run->add_option("--seed", o_seed);
  run->add_option("--runs", o_runs);
  run->add_option("--rounds", o_rounds);
  run->add_option("--stats-trials", o_stats);
  run->add_option("--eval-trials", o_eval);
  run->add_option("--epsilon", o_eps);
  run->add_option("--algorithm", o_alg);

  // verify
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  std::string suite = "all";
  std::uint64_t verify_seed = 1, verify_samples = 1000000;
  unsigned verify_workers = 0;
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"mathratio", "procedures", "oracle", "all"}));
  verify->add_option("--seed", verify_seed);
  verify->add_option("--samples", verify_samples, "mathratio random tuples");
  verify->add_option("--workers", verify_workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      const sm::Graph g = sm::build_instance(spec);
      if (gen_out.empty())
        sm::write_graph(std::cout, g);
      else
        sm::write_graph(g, gen_out);
      return 0;
    }
    if (*stats_cmd) {
      const sm::Graph g = sm::read_graph(stats_graph);
      const sm::EdgeStats st =
          sm::estimate_match_probs(g, stats_trials, stats_seed, stats_workers);
      std::ofstream file;
      if (!stats_out.empty()) {
        file.open(stats_out);
        if (!file) throw sm::Error(sm::ErrorKind::kIo, "cannot write " + stats_out);
      }
      std::ostream& out = stats_out.empty() ? std::cout : file;
      out << "edge,u,v,w,q,qw,std_error\n";
      for (sm::EdgeId e = 0; e < g.num_edges(); ++e) {
        const sm::Edge& edge = g.edge(e);
        out << e << ',' << edge.u << ',' << edge.v << ','
            << sm::format_double(edge.w) << ',' << sm::format_double(st.q[e])
            << ',' << sm::format_double(st.qw[e]) << ','
            << sm::format_double(st.std_error[e]) << '\n';
      }
      std::cerr << "opt " << sm::format_double(st.opt.mean) << " +- "
                << sm::format_double(st.opt.std_error) << '\n';
      return 0;
    }
    if (*run) {
      sm::ExperimentConfig config = sm::read_config(config_path);
      if (o_seed) config.seed = *o_seed;
      if (o_runs) config.runs = *o_runs;
      if (o_rounds) config.rounds = *o_rounds;
      if (o_stats) config.stats_trials = *o_stats;
      if (o_eval) config.eval_trials = *o_eval;
      if (o_eps) config.epsilon = *o_eps;
      if (o_alg) config.algorithm = *o_alg;
      const auto start = std::chrono::steady_clock::now();
      sm::ExperimentReport report = sm::run_experiment(config, run_workers);
      if (timing)
        report.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
      if (report_path.empty())
        std::cout << sm::report_to_json(report);
      else
        sm::write_report(report, report_path);
      if (!csv_path.empty()) sm::append_csv(report, csv_path);
      return 0;
    }
    if (*verify) {
      Check check;
      if (suite == "mathratio" || suite == "all")
        verify_mathratio(check, verify_seed, verify_samples);
      if (suite == "procedures" || suite == "all")
        verify_procedures(check, verify_seed, verify_workers);
      if (suite == "oracle" || suite == "all")
        verify_oracle(check, verify_seed, verify_workers);
      return check.failures == 0 ? 0 : kExitCheckFailed;
    }
  } catch (const sm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const auto kind = e.kind();
    const bool usage = kind == sm::ErrorKind::kConfig ||
                       kind == sm::ErrorKind::kParse ||
                       kind == sm::ErrorKind::kIo ||
                       kind == sm::ErrorKind::kInvalidArgument ||
                       kind == sm::ErrorKind::kProbabilityOutOfRange;
    return usage ? kExitUsage : kExitCheckFailed;
  }
  return kExitUsage;
}
