#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fpd/diagram.hpp"
#include "fpd/sampler.hpp"

namespace fpd {

/// One experiment run: a sweep over (density, length, radius) points with a
/// fixed number of seeded trials per point.
struct ExperimentConfig {
  std::string experiment;
  /// "A" = Z/3 * Z/3, "B" = Z/2 * Z/2 * Z/2, "Z2Z" = Z/2 * Z.
  std::string fixture = "A";
  std::vector<Density> densities{Density{1, 16}};
  std::vector<int> lengths{4};
  std::vector<int> radii{1};
  int trials = 1;
  std::uint64_t seed = 1;
  std::uint64_t relator_cap = kDefaultRelatorCap;
  std::string sampler = "exact-uniform";
  int diagram_k = 2;
  int diagram_m = 3;
  int wall_budget = 20;
  int coset_bound = 20'000;
  int workers = 1;
  std::string output_dir = "fpdlab-out";

  /// Throws InvalidArgument for bad values and UnknownExperiment for an
  /// unknown name; every sweep point must be a valid model.
  void validate() const;
  /// Key-value text: one "key = value" per line, '#' starts a comment, and
  /// list values are comma separated.
  static ExperimentConfig parse(const std::string& text);
};

struct SweepPoint {
  Density density;
  int length = 0;
  int radius = 1;
};
std::vector<SweepPoint> sweep_points(const ExperimentConfig& config);

struct TrialRecord {
  std::string experiment;
  int point = 0;
  SweepPoint params;
  int trial = 0;
  std::uint64_t seed = 0;
  /// "ok" or the error class of a budget or model failure.
  std::string status = "ok";
  /// Values in the experiment's column order; empty when the trial failed.
  std::vector<std::string> metrics;
  double elapsed_ms = 0.0;
};

struct ExperimentInfo {
  std::string name;
  /// The statement the experiment measures.
  std::string claim;
  std::vector<std::string> columns;
  /// Column holding the per-trial pass/fail verdict ("1"/"0").
  std::string success_column;
};
/// The static catalog, in a fixed order.
const std::vector<ExperimentInfo>& list_experiments();
/// Throws UnknownExperiment.
const ExperimentInfo& experiment_info(const std::string& name);

/// Seed of trial `trial` at sweep point `point`, split from the master seed.
std::uint64_t trial_seed(std::uint64_t master, int point, int trial);

/// Runs one trial in isolation; budget and model errors land in `status`.
TrialRecord run_trial(const ExperimentConfig& config, int point, int trial);
/// All trials of the sweep, in (point, trial) order, on `config.workers` threads.
std::vector<TrialRecord> run(const ExperimentConfig& config);

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};
/// 95% Wilson score interval for k successes out of n (n > 0).
WilsonInterval wilson95(std::int64_t k, std::int64_t n);

struct PointSummary {
  int point = 0;
  SweepPoint params;
  int trials = 0;
  int ok = 0;
  int successes = 0;
  double fraction = 0.0;
  WilsonInterval interval;
  /// Median of every numeric column over ok trials.
  std::map<std::string, double> medians;
};
std::vector<PointSummary> summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& records);

/// Header plus one row per trial; columns: experiment, point, density,
/// length, radius, trial, seed, status, metric columns, then elapsed_ms when
/// `with_timing`.
std::string write_csv(const ExperimentConfig& config, const std::vector<TrialRecord>& records,
                      bool with_timing = true);
/// Summary document with the config echo and one entry per sweep point.
std::string write_summary_json(const ExperimentConfig& config, const std::vector<PointSummary>& summary);

/// Two-face diagrams glued along a maximal run of matching letters between
/// two relators (or one relator and a shifted copy of itself), kept when
/// reduced and fulfillable with those relators. Face 0 bears relators[i],
/// face 1 bears relators[j].
struct PieceGluing {
  AbstractDiagram diagram;
  int first = 0;
  int second = 0;
  int run = 0;
};
std::vector<PieceGluing> piece_gluings(const std::vector<Relator>& relators, const FreeProduct& group,
                                       const Alphabet& alphabet, int min_run = 1);

}  // namespace fpd
