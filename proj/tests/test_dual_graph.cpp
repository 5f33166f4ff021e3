#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "fpd/dual_graph.hpp"
#include "fpd/error.hpp"

using namespace fpd;

namespace {

// Oracle: every partition of the polygon sides into edges (restricted growth
// strings, pruning gluings of consecutive sides of one polygon), filtered to
// connected diagrams with at most m connectors, deduplicated by canonical form.
std::set<std::vector<int>> brute_force_classes(int k, int m, int l) {
  std::set<std::vector<int>> out;
  const int len = 2 * l;
  for (int area = 1; area <= k; ++area) {
    const int n = area * len;
    std::vector<int> label(n, 0);
    auto rec = [&](auto&& self, int i, int used) -> void {
      if (i == n) {
        std::vector<std::vector<int>> sides(area, std::vector<int>(len));
        for (int x = 0; x < n; ++x) sides[x / len][x % len] = label[x];
        const auto d = AbstractDiagram::from_side_labels(l, sides);
        if (d.has_backtracking() || !d.is_connected()) return;
        if (static_cast<int>(connectors(d).size()) > m) return;
        out.insert(geometric_canonical_form(d));
        return;
      }
      for (int c = 0; c <= used; ++c) {
        const int s = i % len;
        if (s > 0 && label[i - 1] == c) continue;
        if (s == len - 1 && label[i - len + 1] == c) continue;
        label[i] = c;
        self(self, i + 1, std::max(used, c + 1));
      }
    };
    rec(rec, 0, 0);
  }
  return out;
}

std::set<std::vector<int>> codes(const EnumerationResult& r) {
  std::set<std::vector<int>> out;
  for (const auto& d : r.classes) out.insert(geometric_canonical_form(d));
  return out;
}

int divisor_count(int n) {
  int c = 0;
  for (int i = 1; i <= n; ++i) c += n % i == 0;
  return c;
}

}  // namespace

TEST(DualGraph, SingleFace) {
  const auto d = AbstractDiagram::from_side_labels(3, {{0, 1, 2, 3, 4, 5}});
  const auto g = encode_dual(d);
  ASSERT_EQ(g.faces.size(), 1u);
  ASSERT_EQ(g.connectors.size(), 1u);
  EXPECT_EQ(g.connectors[0].weight, 6);
  EXPECT_EQ(g.faces[0].traversals.size(), 1u);
  EXPECT_EQ(labelled_canonical_form(decode_dual(g)), labelled_canonical_form(d));
}

TEST(DualGraph, RibbonAndTwistedShareUndecoratedGraph) {
  // Two octagons glued along two arcs of length two. Gluing the second arc
  // forwards gives an annulus (two boundary circles), backwards a Moebius band
  // (one). Both have the same undecorated dual graph and connector weights.
  auto boundary_circles = [](const AbstractDiagram& d) {
    const auto deg = d.edge_degrees();
    std::vector<int> parent(d.vertex_count());
    for (int v = 0; v < d.vertex_count(); ++v) parent[v] = v;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    std::set<int> touched;
    for (int e = 0; e < d.edge_count(); ++e) {
      if (deg[e] != 1) continue;
      parent[find(d.edge(e).factor_end)] = find(d.edge(e).central_end);
      touched.insert(d.edge(e).factor_end);
      touched.insert(d.edge(e).central_end);
    }
    std::set<int> roots;
    for (int v : touched) roots.insert(find(v));
    return roots.size();
  };
  auto signature = [](const WeightedDecoratedDualGraph& g) {
    std::multiset<std::multiset<int>> rows;
    for (const auto& row : g.undecorated()) rows.emplace(row.begin(), row.end());
    std::multiset<int> weights;
    for (const auto& c : g.connectors) weights.insert(c.weight);
    return std::make_pair(rows, weights);
  };
  const std::vector<int> a = {0, 1, 2, 3, 4, 5, 6, 7};
  const auto annulus = AbstractDiagram::from_side_labels(4, {a, {0, 1, 8, 9, 4, 5, 10, 11}});
  const auto moebius = AbstractDiagram::from_side_labels(4, {a, {0, 1, 8, 9, 5, 4, 10, 11}});
  for (const auto* d : {&annulus, &moebius}) {
    EXPECT_FALSE(d->has_backtracking());
    EXPECT_EQ(d->euler_characteristic(), 0);
  }
  EXPECT_EQ(boundary_circles(annulus), 2u);
  EXPECT_EQ(boundary_circles(moebius), 1u);
  const auto ga = encode_dual(annulus);
  const auto gm = encode_dual(moebius);
  EXPECT_EQ(signature(ga), signature(gm));
  EXPECT_NE(ga, gm);
  EXPECT_NE(geometric_canonical_form(annulus), geometric_canonical_form(moebius));
  EXPECT_EQ(geometric_canonical_form(decode_dual(ga)), geometric_canonical_form(annulus));
  EXPECT_EQ(geometric_canonical_form(decode_dual(gm)), geometric_canonical_form(moebius));
}

TEST(DualGraph, DecodeRejectsBadWeights) {
  WeightedDecoratedDualGraph g;
  g.half_length = 2;
  g.connectors = {DualConnector{3, true}};
  g.faces = {DualFace{{{0, 1}}, 0, 1, 0}};
  EXPECT_THROW(decode_dual(g), InvalidArgument);
  g.connectors = {DualConnector{4, true}, DualConnector{1, true}};
  EXPECT_THROW(decode_dual(g), InvalidArgument);
}

TEST(DualGraphProperty, RoundTripOnRandomDiagrams) {
  Rng rng(2718);
  for (int i = 0; i < 500; ++i) {
    const auto d = random_diagram(1 + static_cast<int>(rng.below(3)), 2 + static_cast<int>(rng.below(4)), 0.3, rng);
    const auto back = decode_dual(encode_dual(d));
    ASSERT_EQ(labelled_canonical_form(back), labelled_canonical_form(d)) << "diagram " << i;
    ASSERT_EQ(geometric_canonical_form(back), geometric_canonical_form(d));
  }
}

TEST(Canonical, InvariantUnderRelabelling) {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto d = random_diagram(1 + static_cast<int>(rng.below(3)), 3, 0.3, rng);
    const auto c = canonicalize(d);
    EXPECT_EQ(labelled_canonical_form(c), labelled_canonical_form(d));
    EXPECT_EQ(geometric_canonical_form(c), geometric_canonical_form(d));
    EXPECT_EQ(canonicalize(c), c);
  }
}

TEST(Enumerate, SingleFaceSingleConnector) {
  // One connector: a cycle of even length c dividing 2l, wrapped 2l/c times.
  for (int l = 1; l <= 6; ++l) {
    const auto r = enumerate_bounded(1, 1, l);
    EXPECT_EQ(static_cast<int>(r.classes.size()), divisor_count(l)) << "l=" << l;
  }
}

TEST(Enumerate, SingleFaceSimpleFamily) {
  // One face meeting one connector once: the free polygon. Its 2l choices of
  // distinguished factor vertex and orientation all lie in that one class.
  for (int l = 1; l <= 6; ++l) {
    const auto r = enumerate_bounded(1, 1, l, 1'000'000, true);
    ASSERT_EQ(r.classes.size(), 1u) << "l=" << l;
    const AbstractDiagram& d = r.classes[0];
    std::set<std::vector<int>> labelled;
    for (int s = 0; s < l; ++s)
      for (int o : {1, -1}) {
        Face f = d.face(0);
        std::rotate(f.edges.begin(), f.edges.begin() + 2 * s, f.edges.end());
        f.orientation = o;
        const auto v = d.with_faces({f});
        EXPECT_EQ(geometric_canonical_form(v), geometric_canonical_form(d));
        std::vector<int> raw = f.edges;
        raw.push_back(o);
        labelled.insert(raw);
      }
    EXPECT_EQ(static_cast<int>(labelled.size()), 2 * l);
  }
}

TEST(Enumerate, MatchesBruteForceSmall) {
  for (auto [k, m, l] : std::vector<std::tuple<int, int, int>>{{1, 3, 2}, {1, 4, 3}, {2, 2, 2}, {2, 3, 2}}) {
    EXPECT_EQ(codes(enumerate_bounded(k, m, l)), brute_force_classes(k, m, l)) << k << " " << m << " " << l;
  }
}

TEST(Enumerate, MatchesBruteForceK2M3L3) {
  const auto r = enumerate_bounded(2, 3, 3);
  EXPECT_EQ(codes(r), brute_force_classes(2, 3, 3));
  for (const auto& d : r.classes) EXPECT_TRUE(is_km_bounded(d, 2, 3));
}

TEST(Enumerate, BudgetExceeded) { EXPECT_THROW(enumerate_bounded(2, 4, 4, 10), BudgetExceeded); }

TEST(Enumerate, PolynomialGrowthOfSimpleFamily) {
  // Class counts at (K, M) = (2, 4) with simple dual graphs stay below
  // c * l^6, and the local log-log slope stays below 6.
  std::vector<double> counts;
  for (int l = 2; l <= 6; ++l)
    counts.push_back(static_cast<double>(enumerate_bounded(2, 4, l, 50'000'000, true).classes.size()));
  const double c = counts[0] / std::pow(2.0, 6);
  for (int l = 2; l <= 6; ++l) EXPECT_LE(counts[l - 2], c * std::pow(l, 6)) << "l=" << l;
  const double slope = std::log(counts[4] / counts[3]) / std::log(6.0 / 5.0);
  EXPECT_LT(slope, 6.0);
}

TEST(Enumerate, SimpleFamilyIsSubsetOfFull) {
  const auto full = codes(enumerate_bounded(2, 3, 3));
  for (const auto& d : enumerate_bounded(2, 3, 3, 50'000'000, true).classes) {
    EXPECT_TRUE(full.count(geometric_canonical_form(d)));
    for (const auto& f : encode_dual(d).faces) {
      std::set<int> seen;
      for (const auto& t : f.traversals) EXPECT_TRUE(seen.insert(t.connector).second);
    }
  }
}

TEST(Discs, PlanarIdentityAndConnectorBound) {
  for (int l = 2; l <= 4; ++l) {
    const auto discs = enumerate_discs(3, l);
    EXPECT_GT(discs.size(), 3u);
    for (const auto& d : discs) {
      ASSERT_TRUE(d.is_disc());
      EXPECT_EQ(2 * cancellation(d), 2 * l * d.area() - d.boundary_length());
      const int k = d.area();
      EXPECT_LE(static_cast<int>(connectors(d).size()), k * (k - 1) * (k - 1) / 2 + k * k);
      EXPECT_LE(cancellation(d), relative_cancellation_x2(d));
    }
  }
}
