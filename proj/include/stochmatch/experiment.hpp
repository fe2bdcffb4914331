#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "stochmatch/estimators.hpp"
#include "stochmatch/graph.hpp"

namespace stochmatch {

struct InstanceSpec {
  // tightness | blum_bad | star | random | file
  std::string generator = "tightness";
  int L = 100;          // tightness
  int N = 50;           // blum_bad
  int leaves = 10000;   // star
  double heavy_weight = 999.0;
  double q_target = 0.001;
  int n = 20;           // random
  double density = 0.3;
  std::string weights = "unit";  // unit | uniform
  double lo = 1.0, hi = 1.0;
  double p = 0.5;
  std::uint64_t graph_seed = 1;
  std::string path;     // file

  bool operator==(const InstanceSpec&) const = default;
};

struct AnalysisSpec {
  bool procedures = false;
  std::uint64_t runs = 1000;
  std::optional<double> epsilon;  // defaults to the config epsilon
  std::optional<double> tau;      // defaults to compute_tau(epsilon, p)
  double delta = 0.09;
  bool checks = true;
  std::uint64_t blossom_max_set = 0;  // 0 disables the blossom check

  bool operator==(const AnalysisSpec&) const = default;
};

struct ExperimentConfig {
  InstanceSpec instance;
  // nonadaptive | baseline_default | baseline_adversarial | adaptive
  std::string algorithm = "nonadaptive";
  double epsilon = 0.25;
  std::optional<std::uint64_t> rounds;  // R override
  std::uint64_t r_star = 1;             // adaptive samples per round
  std::uint64_t stats_trials = 10000;
  std::uint64_t eval_trials = 10000;
  std::uint64_t runs = 1;
  std::uint64_t seed = 0;
  AnalysisSpec analysis;

  bool operator==(const ExperimentConfig&) const = default;
};

// Throws Error(kConfig) on an invalid or incomplete configuration.
void validate_config(const ExperimentConfig& config);

struct AnalysisReport {
  double epsilon = 0.0, tau = 0.0, delta = 0.0;
  std::uint64_t runs = 0;
  std::uint64_t crucial = 0, noncrucial = 0, heavy = 0, semiheavy = 0,
                cstar = 0;
  double qw_noncrucial = 0.0, qw_crucial = 0.0, qw_heavy = 0.0,
         qw_semiheavy = 0.0, qw_cstar = 0.0, qw_sampled_crucial = 0.0;
  Estimate procedure1, procedure2, procedure3;
  double ratio1 = 0.0;  // procedure1 / qw(N)
  double ratio2 = 0.0;  // procedure2 / OPT
  double ratio3 = 0.0;  // procedure3 / OPT
  std::uint64_t validity_violations = 0;
  std::uint64_t procedure1_violations = 0;
  std::uint64_t blossom_violations = 0;
  std::uint64_t heavy_failures = 0;

  bool operator==(const AnalysisReport&) const = default;
};

struct ExperimentReport {
  ExperimentConfig config;
  int vertices = 0;
  std::uint64_t edges = 0;
  double p = 0.0;
  double max_weight = 0.0;
  Estimate opt;
  Estimate value;  // E[M(S ∩ E_p)] or adaptive matched weight
  double ratio = 0.0;
  double ratio_std_error = 0.0;
  std::uint64_t rounds = 0;
  double max_queries_per_vertex = 0.0;   // mean over runs
  double mean_queries_per_vertex = 0.0;  // mean over runs
  double queried_edges = 0.0;            // mean over runs
  std::optional<AnalysisReport> analysis;
  std::optional<double> wall_time_seconds;

  bool operator==(const ExperimentReport&) const = default;
};

Graph build_instance(const InstanceSpec& spec);

// Deterministic in the config; `workers` only changes speed.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                unsigned workers = 0);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig read_config(const std::string& path);

std::string report_to_json(const ExperimentReport& report);
// Recomputes ratio = value / opt and throws Error(kParse) on mismatch.
ExperimentReport report_from_json(const std::string& text);
void write_report(const ExperimentReport& report, const std::string& path);
ExperimentReport read_report(const std::string& path);

std::string csv_header();
std::string csv_row(const ExperimentReport& report);
// Appends a row, writing the header first when the file is new or empty.
void append_csv(const ExperimentReport& report, const std::string& path);

}  // namespace stochmatch
