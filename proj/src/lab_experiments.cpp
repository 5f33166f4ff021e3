#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "fpd/complex.hpp"
#include "fpd/dual_graph.hpp"
#include "fpd/error.hpp"
#include "fpd/lab.hpp"
#include "fpd/mixed.hpp"
#include "fpd/walls.hpp"

namespace fpd {

namespace {

std::string b(bool x) { return x ? "1" : "0"; }
std::string num(std::int64_t x) { return std::to_string(x); }
std::string real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

int mod(int x, int n) { return ((x % n) + n) % n; }

// Maximal cyclic runs of true values as (start, length); a full cycle is
// reported once as (0, n).
std::vector<std::pair<int, int>> cyclic_runs(const std::vector<bool>& match) {
  const int n = static_cast<int>(match.size());
  std::vector<std::pair<int, int>> runs;
  int gap = -1;
  for (int t = 0; t < n && gap < 0; ++t)
    if (!match[t]) gap = t;
  if (gap < 0) {
    runs.emplace_back(0, n);
    return runs;
  }
  int start = -1;
  for (int step = 1; step <= n; ++step) {
    const int t = (gap + step) % n;
    if (match[t]) {
      if (start < 0) start = t;
    } else if (start >= 0) {
      runs.emplace_back(start, mod(t - start, n));
      start = -1;
    }
  }
  return runs;
}

}  // namespace

std::vector<PieceGluing> piece_gluings(const std::vector<Relator>& relators, const FreeProduct& group,
                                       const Alphabet& alphabet, int min_run) {
  std::vector<PieceGluing> out;
  if (relators.empty()) return out;
  const int l = static_cast<int>(relators.front().size());
  for (const auto& r : relators)
    if (static_cast<int>(r.size()) != l) throw InvalidArgument("relators must have equal length");
  const int n = static_cast<int>(relators.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Relator& r1 = relators[i];
      const Relator& r2 = relators[j];
      const bool self = i == j;
      for (const bool same_direction : {true, false}) {
        for (int s = 0; s < l; ++s) {
          // Shifts s and l - s of a relator against itself give the same diagram.
          if (same_direction && self && (s == 0 || 2 * s > l)) continue;
          // Letter t of r1 meets letter partner(t) of r2.
          auto partner = [&](int t) { return same_direction ? mod(t + s, l) : mod(s - t, l); };
          std::vector<bool> match(l);
          for (int t = 0; t < l; ++t) {
            const int other = r2[partner(t)];
            match[t] = r1[t] == (same_direction ? other : alphabet.inverse(other));
          }
          for (const auto& [k1, run] : cyclic_runs(match)) {
            if (run < min_run) continue;
            // A reversed self-overlap is met again from its other end.
            if (!same_direction && self && run < l && mod(s - (k1 + run - 1), l) < k1) continue;
            const int k2 = partner(k1);
            bool before = false;
            bool after = false;
            if (run < l) {
              const int b1 = mod(k1 - 1, l);
              const int a1 = mod(k1 + run, l);
              before = alphabet.factor_of(r1[b1]) == alphabet.factor_of(r2[partner(b1)]);
              after = alphabet.factor_of(r1[a1]) == alphabet.factor_of(r2[partner(a1)]);
              // Extending both ends of a run of l - 1 would close up the last
              // factor vertex, whose letters differ.
              if (a1 == b1) after = false;
            }
            auto d = glue_two_faces(l, k1, k2, run, same_direction, before, after);
            std::vector<int> face_relator{i, j};
            std::vector<int> fixed{i, j};
            if (self) {
              auto faces = d.faces();
              faces[1].cls = 0;
              d = d.with_faces(faces);
              fixed = {i};
            }
            if (!is_reduced(d, &face_relator)) continue;
            if (!fulfill(d, group, alphabet, relators, {}, fixed)) continue;
            out.push_back(PieceGluing{std::move(d), i, j, run});
          }
        }
      }
    }
  }
  return out;
}

namespace lab_detail {

std::vector<FactorGroup> fixture_factors(const std::string& fixture) {
  if (fixture == "A") return {FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")};
  if (fixture == "B") return {FactorGroup::cyclic(2, "a"), FactorGroup::cyclic(2, "b"), FactorGroup::cyclic(2, "c")};
  if (fixture == "Z2Z") return {FactorGroup::cyclic(2, "a"), FactorGroup::free(1, {"t"})};
  throw InvalidArgument("unknown fixture '" + fixture + "' (expected A, B or Z2Z)");
}

namespace {

struct Trial {
  const ExperimentConfig& config;
  const SweepPoint& point;
  std::uint64_t seed;

  ModelParams params() const {
    return ModelParams{fixture_factors(config.fixture), point.density, point.radius, point.length, seed,
                       config.relator_cap};
  }
  RelatorSet sample(const Model& model) const {
    Rng rng(seed);
    return sample_relator_set(model, rng, sampler_from_string(config.sampler));
  }
};

std::vector<std::string> dihedral_transition(const Trial& t) {
  const Model model(t.params());
  const auto set = t.sample(model);
  const auto w = dihedral_witness(model.alphabet(), set.relators);
  return {num(static_cast<std::int64_t>(set.relators.size())), b(set.cap_exceeded),
          num(static_cast<std::int64_t>(prefix_collisions(set.relators).size())), to_string(w.verdict),
          real(w.fraction), b(w.verdict == WitnessVerdict::Collapsed)};
}

std::vector<std::string> small_cancellation_rate(const Trial& t) {
  const Model model(t.params());
  const auto set = t.sample(model);
  const auto st = piece_stats(set.relators, model.alphabet());
  return {num(static_cast<std::int64_t>(set.relators.size())), num(st.max_piece), real(st.lambda),
          b(st.c_prime_sixth)};
}

// Enumerations are shared between trials and computed once per key.
const std::vector<AbstractDiagram>& bounded_diagrams(int k, int m, int l) {
  static std::mutex lock;
  static std::map<std::tuple<int, int, int>, std::vector<AbstractDiagram>> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find({k, m, l});
  if (it == cache.end()) it = cache.emplace(std::make_tuple(k, m, l), enumerate_bounded(k, m, l).classes).first;
  return it->second;
}

// Some assignment of relators to faces that is reduced and fulfillable.
bool fulfillable_somehow(const AbstractDiagram& d, const Model& model, const std::vector<Relator>& relators) {
  const int faces = d.area();
  const int n = static_cast<int>(relators.size());
  std::int64_t total = 1;
  for (int f = 0; f < faces; ++f) {
    total *= n;
    if (total > 4096) throw BudgetExceeded("too many relator assignments for one diagram");
  }
  auto labelled = d.faces();
  for (int f = 0; f < faces; ++f) labelled[f].cls = f;
  const auto base = d.with_faces(labelled);
  FulfillOptions options;
  options.distinct_relators = false;
  std::vector<int> assignment(faces, 0);
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (int f = 0; f < faces; ++f, c /= n) assignment[f] = static_cast<int>(c % n);
    if (!is_reduced(base, &assignment)) continue;
    if (fulfill(base, model.group(), model.alphabet(), relators, options, assignment)) return true;
  }
  return false;
}

std::vector<std::string> cancellation_audit(const Trial& t) {
  const Model model(t.params());
  const auto set = t.sample(model);
  const auto& diagrams = bounded_diagrams(t.config.diagram_k, t.config.diagram_m, t.point.length);
  const Density d = t.point.density;
  const std::int64_t l = t.point.length;
  std::int64_t fulfillable = 0, can_bad = 0, disc_bad = 0, relative_bad = 0;
  for (const auto& y : diagrams) {
    const std::int64_t can = cancellation(y);
    if (y.is_disc() && 2 * can != 2 * l * y.area() - y.boundary_length()) ++disc_bad;
    if (can > relative_cancellation_x2(y)) ++relative_bad;
    if (!fulfillable_somehow(y, model, set.relators)) continue;
    ++fulfillable;
    if (can * d.den > d.num * y.area() * 2 * l) ++can_bad;
  }
  return {num(static_cast<std::int64_t>(set.relators.size())), num(static_cast<std::int64_t>(diagrams.size())),
          num(fulfillable), num(can_bad), num(disc_bad), num(relative_bad),
          b(can_bad == 0 && disc_bad == 0 && relative_bad == 0)};
}

std::vector<std::string> greendlinger_audit(const Trial& t) {
  const Model model(t.params());
  const auto set = t.sample(model);
  const auto gluings = piece_gluings(set.relators, model.group(), model.alphabet());
  std::int64_t hyp = 0, concl = 0, both = 0;
  for (const auto& g : gluings) {
    const auto r = greendlinger_check(g.diagram, t.point.density.value());
    hyp += r.hypothesis;
    concl += r.conclusion;
    both += r.hypothesis && r.conclusion;
  }
  return {num(static_cast<std::int64_t>(set.relators.size())), num(static_cast<std::int64_t>(gluings.size())),
          num(hyp), num(concl), num(both), b(both == hyp)};
}

std::vector<std::string> isoperimetry_audit(const Trial& t) {
  const Model model(t.params());
  const auto set = t.sample(model);
  const auto gluings = piece_gluings(set.relators, model.group(), model.alphabet());
  const Density d = t.point.density;
  const std::int64_t l = t.point.length;
  std::int64_t bad = 0;
  for (const auto& g : gluings) {
    const std::int64_t boundary = g.diagram.boundary_length();
    if (boundary * d.den < (d.den - 2 * d.num) * 2 * l * g.diagram.area()) ++bad;
  }
  const double rate = gluings.empty() ? 0.0 : static_cast<double>(bad) / static_cast<double>(gluings.size());
  return {num(static_cast<std::int64_t>(set.relators.size())), num(static_cast<std::int64_t>(gluings.size())),
          num(bad), real(rate), b(bad == 0)};
}

std::vector<std::string> hypergraph_suite(const Trial& t) {
  const Model model(t.params());
  const auto set = t.sample(model);
  const auto gluings = piece_gluings(set.relators, model.group(), model.alphabet());
  std::int64_t hypergraphs = 0, trees = 0, two_sided = 0;
  for (const auto& g : gluings) {
    const auto x = CellComplex::from(complex_from_diagram(g.diagram));
    for (const auto& h : all_hypergraphs(x)) {
      ++hypergraphs;
      trees += is_embedded_tree(h);
      if (is_embedded(h) && complement_components(x, h).count == 2) ++two_sided;
    }
  }
  return {num(static_cast<std::int64_t>(set.relators.size())), num(static_cast<std::int64_t>(gluings.size())),
          num(hypergraphs), num(trees), num(two_sided), b(trees == hypergraphs && two_sided == hypergraphs)};
}

std::vector<std::string> antipodality_suite(const Trial& t) {
  if (t.config.fixture != "Z2Z") throw InvalidArgument("antipodality-suite runs on the Z2Z fixture");
  const Model model(t.params());
  const auto& group = model.group();
  const auto& alphabet = model.alphabet();
  Rng rng(t.seed);
  const std::vector<Relator> face_relators{sample_uniform(model, rng)};
  const int l = t.point.length;
  std::vector<int> sides(2 * l);
  std::iota(sides.begin(), sides.end(), 0);
  const auto x = complex_from_diagram(AbstractDiagram::from_side_labels(l, {sides}), &alphabet, &face_relators);
  // Z/2 reflects a path of length two; Z translates a line cut at half-integers
  // so every fiber geodesic, and hence every polygon, has even length.
  const auto reflect = Fiber::from_permutations(group.factor(0), 3, {{0, 1}, {1, 2}}, {}, 0, {{2, 1, 0}}, "path");
  const auto mixed = build_mixed(x, group, alphabet, {reflect, Fiber::line(group.factor(1), t.point.radius, 2)});
  const auto sp = subdivision_params(t.point.density, l, mixed.tau);
  const int k = static_cast<int>(sp.k);
  const double epsilon = boost::rational_cast<double>(sp.epsilon);
  const auto balanced = subdivide_polygonal(mixed, x, k);
  const auto ex = CellComplex::from(balanced);
  const auto base = CellComplex::from(subdivide(x, k));
  std::int64_t count = 0, two_sided = 0;
  double min_ratio = 0.5;
  bool passed = true;
  for (const auto& w : all_hypergraphs(ex)) {
    ++count;
    const auto rep = antipodality(base, project_hypergraph(balanced, w));
    if (rep.segments > 0) min_ratio = std::min(min_ratio, rep.min_ratio);
    passed = passed && check_epsilon(rep, epsilon);
    try {
      two_sided += two_sided_projection_check(balanced, w).passed;
    } catch (const WallNotTwoSided&) {
    } catch (const NotEmbedded&) {
    }
  }
  return {num(mixed.tau), num(k), num(sp.polygon_length), real(epsilon), num(count), real(min_ratio),
          num(two_sided), b(passed)};
}

std::vector<std::string> cubulate_demo(const Trial& t) {
  const FreeProduct group{fixture_factors("A")};
  const Alphabet alphabet{group, 1};
  const std::vector<Relator> relators{alphabet.to_letters(group.parse("1:1 2:1 1:1 2:1"))};
  const auto x = build_XR_finite(group, alphabet, relators,
                                 finite_quotient(group, alphabet, relators, t.config.coset_bound));
  const auto cx = CellComplex::from(x);
  const auto ws = wallspace_of(cx);
  const auto dual = dual_cube_complex(ws, t.config.wall_budget);
  std::ostringstream f;
  for (std::size_t i = 0; i < dual.f_vector.size(); ++i) f << (i ? " " : "") << dual.f_vector[i];
  return {num(x.vertex_count()), num(x.edge_count()), num(x.polygon_count()),
          num(static_cast<std::int64_t>(ws.walls.size())), num(ws.rejected), num(dual.dimension), f.str(),
          b(link_flag_check(dual.as_data()))};
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& config, const SweepPoint& point, std::uint64_t seed) {
  const Trial t{config, point, seed};
  const auto& name = config.experiment;
  if (name == "dihedral-transition") return dihedral_transition(t);
  if (name == "small-cancellation-rate") return small_cancellation_rate(t);
  if (name == "cancellation-audit") return cancellation_audit(t);
  if (name == "greendlinger-audit") return greendlinger_audit(t);
  if (name == "isoperimetry-audit") return isoperimetry_audit(t);
  if (name == "hypergraph-suite") return hypergraph_suite(t);
  if (name == "antipodality-suite") return antipodality_suite(t);
  if (name == "cubulate-demo") return cubulate_demo(t);
  throw UnknownExperiment("unknown experiment '" + name + "'");
}

}  // namespace lab_detail

}  // namespace fpd
