#include "fpd/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "fpd/error.hpp"

namespace fpd {

namespace lab_detail {
// Implemented with the experiments.
std::vector<std::string> run_experiment(const ExperimentConfig& config, const SweepPoint& point, std::uint64_t seed);
std::vector<FactorGroup> fixture_factors(const std::string& fixture);
}  // namespace lab_detail

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ParseError("empty list item in '" + value + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("key '" + key + "' expects an integer, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    if (!value.empty() && value[0] == '-') throw ParseError("");
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("key '" + key + "' expects a non-negative integer, got '" + value + "'");
  }
}

int parse_small(const std::string& key, const std::string& value) {
  const auto v = parse_int(key, value);
  if (v < -1'000'000'000 || v > 1'000'000'000) throw ParseError("key '" + key + "' is out of range");
  return static_cast<int>(v);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  experiment_info(experiment);
  if (trials < 1) throw InvalidArgument("trial count must be >= 1");
  if (workers < 1) throw InvalidArgument("worker count must be >= 1");
  if (densities.empty() || lengths.empty() || radii.empty()) throw InvalidArgument("every sweep list needs a value");
  if (diagram_k < 1 || diagram_m < 1) throw InvalidArgument("diagram bounds must be >= 1");
  if (wall_budget < 1 || wall_budget > 63) throw InvalidArgument("wall budget must lie in [1, 63]");
  if (coset_bound < 1) throw InvalidArgument("coset bound must be >= 1");
  sampler_from_string(sampler);
  const auto factors = lab_detail::fixture_factors(fixture);
  for (const auto& p : sweep_points(*this)) {
    ModelParams params{factors, p.density, p.radius, p.length, seed, relator_cap};
    params.validate();
  }
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
    if (key == "experiment") {
      c.experiment = value;
    } else if (key == "fixture") {
      c.fixture = value;
    } else if (key == "densities") {
      c.densities.clear();
      for (const auto& item : split_list(value)) c.densities.push_back(Density::parse(item));
    } else if (key == "lengths") {
      c.lengths.clear();
      for (const auto& item : split_list(value)) c.lengths.push_back(parse_small(key, item));
    } else if (key == "radii") {
      c.radii.clear();
      for (const auto& item : split_list(value)) c.radii.push_back(parse_small(key, item));
    } else if (key == "trials") {
      c.trials = parse_small(key, value);
    } else if (key == "seed") {
      c.seed = parse_u64(key, value);
    } else if (key == "relator_cap") {
      c.relator_cap = parse_u64(key, value);
    } else if (key == "sampler") {
      c.sampler = value;
    } else if (key == "diagram_k") {
      c.diagram_k = parse_small(key, value);
    } else if (key == "diagram_m") {
      c.diagram_m = parse_small(key, value);
    } else if (key == "wall_budget") {
      c.wall_budget = parse_small(key, value);
    } else if (key == "coset_bound") {
      c.coset_bound = parse_small(key, value);
    } else if (key == "workers") {
      c.workers = parse_small(key, value);
    } else if (key == "output_dir") {
      c.output_dir = value;
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

std::vector<SweepPoint> sweep_points(const ExperimentConfig& config) {
  std::vector<SweepPoint> out;
  for (const auto& d : config.densities)
    for (int l : config.lengths)
      for (int m : config.radii) out.push_back(SweepPoint{d, l, m});
  return out;
}

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> catalog{
      {"dihedral-transition",
       "Above density 1/2 the quotient collapses to a finite dihedral group: the prefix-collision witness "
       "identifies every letter with its inverse pairing",
       {"relators", "cap_exceeded", "collisions", "verdict", "witness_fraction", "collapsed"},
       "collapsed"},
      {"small-cancellation-rate",
       "Below density 1/12 the relators satisfy C'(1/6) over the free product, the longest piece being "
       "near 2dl",
       {"relators", "max_piece", "lambda", "c_prime_sixth"},
       "c_prime_sixth"},
      {"cancellation-audit",
       "Fulfillable reduced (K,M)-bounded diagrams satisfy can(Y) <= d Area(Y) 2l",
       {"relators", "diagrams", "fulfillable", "can_violations", "disc_identity_violations",
        "relative_violations", "holds"},
       "holds"},
      {"greendlinger-audit",
       "A fulfillable diagram whose subdiagrams satisfy the cancellation bound has two faces with at least "
       "2l(1 - 5d/2) external edges",
       {"relators", "diagrams", "hypothesis_holds", "conclusion_holds", "conclusion_given_hypothesis", "holds"},
       "holds"},
      {"isoperimetry-audit",
       "Fulfillable reduced diagrams satisfy |boundary D| >= (1 - 2d) 2l Area(D)",
       {"relators", "diagrams", "violations", "violation_rate", "holds"},
       "holds"},
      {"hypergraph-suite",
       "Hypergraphs of complexes built from fulfillable diagrams are embedded trees separating the complex "
       "into two components",
       {"relators", "complexes", "hypergraphs", "embedded_trees", "two_sided", "holds"},
       "holds"},
      {"antipodality-suite",
       "After balancing, projected hypergraphs of line-fiber mixed complexes are epsilon-antipodal with "
       "polygon length L = 4kl",
       {"tau", "k", "polygon_length", "epsilon", "hypergraphs", "min_ratio", "two_sided", "passed"},
       "passed"},
      {"cubulate-demo",
       "The finite model <a,b | a^3, b^3, (ab)^2> has a wallspace whose dual cube complex has flag links",
       {"vertices", "edges", "polygons", "walls", "rejected", "dimension", "f_vector", "flag"},
       "flag"},
  };
  return catalog;
}

const ExperimentInfo& experiment_info(const std::string& name) {
  for (const auto& e : list_experiments())
    if (e.name == name) return e;
  throw UnknownExperiment("unknown experiment '" + name + "'");
}

std::uint64_t trial_seed(std::uint64_t master, int point, int trial) {
  return derive_seed(derive_seed(master, static_cast<std::uint64_t>(point)), static_cast<std::uint64_t>(trial));
}

TrialRecord run_trial(const ExperimentConfig& config, int point, int trial) {
  const auto points = sweep_points(config);
  if (point < 0 || point >= static_cast<int>(points.size()) || trial < 0 || trial >= config.trials)
    throw InvalidArgument("trial index out of range");
  TrialRecord rec;
  rec.experiment = config.experiment;
  rec.point = point;
  rec.params = points[point];
  rec.trial = trial;
  rec.seed = trial_seed(config.seed, point, trial);
  const auto start = std::chrono::steady_clock::now();
  try {
    rec.metrics = lab_detail::run_experiment(config, rec.params, rec.seed);
  } catch (const Error& e) {
    const std::string what = e.what();
    rec.status = what.substr(0, what.find(':'));
    rec.metrics.clear();
  }
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<TrialRecord> run(const ExperimentConfig& config) {
  config.validate();
  const int points = static_cast<int>(sweep_points(config).size());
  const int total = points * config.trials;
  std::vector<TrialRecord> out(total);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < total; i = next++) out[i] = run_trial(config, i / config.trials, i % config.trials);
  };
  const int threads = std::min(config.workers, std::max(total, 1));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

WilsonInterval wilson95(std::int64_t k, std::int64_t n) {
  if (n <= 0 || k < 0 || k > n) throw InvalidArgument("Wilson interval needs 0 <= k <= n, n > 0");
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double denom = 1.0 + z * z / nn;
  const double centre = (p + z * z / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
  return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

std::vector<PointSummary> summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& records) {
  const auto& info = experiment_info(config.experiment);
  const auto points = sweep_points(config);
  const auto success_at = static_cast<std::size_t>(
      std::find(info.columns.begin(), info.columns.end(), info.success_column) - info.columns.begin());
  std::vector<PointSummary> out(points.size());
  std::vector<std::map<std::string, std::vector<double>>> values(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    out[p].point = static_cast<int>(p);
    out[p].params = points[p];
  }
  for (const auto& r : records) {
    if (r.point < 0 || r.point >= static_cast<int>(points.size())) throw InvalidArgument("record outside the sweep");
    auto& s = out[r.point];
    ++s.trials;
    if (r.status != "ok" || r.metrics.size() != info.columns.size()) continue;
    ++s.ok;
    if (r.metrics[success_at] == "1") ++s.successes;
    for (std::size_t c = 0; c < info.columns.size(); ++c) {
      char* end = nullptr;
      const double v = std::strtod(r.metrics[c].c_str(), &end);
      if (!r.metrics[c].empty() && end && *end == '\0') values[r.point][info.columns[c]].push_back(v);
    }
  }
  for (std::size_t p = 0; p < points.size(); ++p) {
    auto& s = out[p];
    if (s.ok > 0) {
      s.fraction = static_cast<double>(s.successes) / s.ok;
      s.interval = wilson95(s.successes, s.ok);
    }
    for (auto& [name, v] : values[p]) {
      std::sort(v.begin(), v.end());
      const std::size_t n = v.size();
      s.medians[name] = n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
    }
  }
  return out;
}

std::string write_csv(const ExperimentConfig& config, const std::vector<TrialRecord>& records, bool with_timing) {
  const auto& info = experiment_info(config.experiment);
  std::ostringstream os;
  os << "experiment,point,density,length,radius,trial,seed,status";
  for (const auto& c : info.columns) os << ',' << c;
  if (with_timing) os << ",elapsed_ms";
  os << '\n';
  for (const auto& r : records) {
    os << r.experiment << ',' << r.point << ',' << r.params.density.str() << ',' << r.params.length << ','
       << r.params.radius << ',' << r.trial << ',' << r.seed << ',' << r.status;
    for (std::size_t c = 0; c < info.columns.size(); ++c) os << ',' << (c < r.metrics.size() ? r.metrics[c] : "");
    if (with_timing) os << ',' << format_double(r.elapsed_ms);
    os << '\n';
  }
  return os.str();
}

std::string write_summary_json(const ExperimentConfig& config, const std::vector<PointSummary>& summary) {
  const auto& info = experiment_info(config.experiment);
  nlohmann::ordered_json doc;
  doc["format"] = "fpd-summary 1";
  doc["experiment"] = config.experiment;
  doc["claim"] = info.claim;
  doc["fixture"] = config.fixture;
  doc["seed"] = config.seed;
  doc["trials"] = config.trials;
  doc["sampler"] = config.sampler;
  doc["success_column"] = info.success_column;
  doc["points"] = nlohmann::ordered_json::array();
  for (const auto& s : summary) {
    nlohmann::ordered_json p;
    p["point"] = s.point;
    p["density"] = s.params.density.str();
    p["length"] = s.params.length;
    p["radius"] = s.params.radius;
    p["trials"] = s.trials;
    p["ok"] = s.ok;
    p["successes"] = s.successes;
    p["fraction"] = s.fraction;
    p["wilson_low"] = s.interval.low;
    p["wilson_high"] = s.interval.high;
    p["medians"] = nlohmann::ordered_json::object();
    for (const auto& [name, v] : s.medians) p["medians"][name] = v;
    doc["points"].push_back(std::move(p));
  }
  return doc.dump(2) + "\n";
}

}  // namespace fpd
