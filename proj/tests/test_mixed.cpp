#include <gtest/gtest.h>

#include <numeric>

#include "fpd/error.hpp"
#include "fpd/mixed.hpp"

using namespace fpd;

namespace {

struct Fixture {
  FreeProduct group{{FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")}};
  Alphabet alphabet{group, 1};
  std::vector<Relator> relators{alphabet.to_letters(group.parse("1:1 2:1 1:1 2:1"))};
  PolygonalComplex x = build_XR_finite(group, alphabet, relators, finite_quotient(group, alphabet, relators));
};

// Z/3 rotating the three leaves of a tripod; the basepoint is a leaf.
Fiber tripod(const FactorGroup& g) {
  return Fiber::from_permutations(g, 4, {{0, 1}, {0, 2}, {0, 3}}, {}, 1, {{0, 2, 3, 1}}, "tripod");
}

// Every polygon is a closed path along the listed edges.
bool polygons_are_closed_paths(const MixedComplex& m) {
  for (const auto& p : m.polygons) {
    if (p.vertices.size() != p.edges.size()) return false;
    const std::size_t n = p.edges.size();
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = m.edges[p.edges[j]];
      const int a = p.vertices[j];
      const int b = p.vertices[(j + 1) % n];
      if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Mixed, PointFibersReproduceTheBase) {
  Fixture f;
  const auto m = build_mixed(f.x, f.group, f.alphabet, {Fiber::point(), Fiber::point()});
  ASSERT_EQ(static_cast<int>(m.vertices.size()), f.x.vertex_count());
  ASSERT_EQ(static_cast<int>(m.edges.size()), f.x.edge_count());
  EXPECT_TRUE(m.squares.empty());
  EXPECT_EQ(m.tau, 0);
  for (int v = 0; v < f.x.vertex_count(); ++v) EXPECT_EQ(m.vertex_projection[v], v);
  for (int e = 0; e < f.x.edge_count(); ++e) {
    EXPECT_EQ(m.edge_projection[e], e);
    EXPECT_EQ(m.edges[e].u, f.x.edge(e).u);
    EXPECT_EQ(m.edges[e].v, f.x.edge(e).v);
  }
  for (int p = 0; p < f.x.polygon_count(); ++p) EXPECT_EQ(m.polygons[p], f.x.polygon(p));
  EXPECT_TRUE(audit_projection(m, f.x).ok());
}

TEST(Mixed, TripodFibersOverFiniteModel) {
  Fixture f;
  const auto m = build_mixed(f.x, f.group, f.alphabet, {tripod(f.group.factor(0)), tripod(f.group.factor(1))});
  EXPECT_EQ(m.vertices.size(), 12u + 8u * 4u);
  EXPECT_EQ(m.edges.size(), 24u + 8u * 3u);
  EXPECT_EQ(m.tau, 2);
  EXPECT_TRUE(polygons_are_closed_paths(m));
  for (const auto& p : m.polygons) EXPECT_EQ(p.edges.size(), 8u + 4u * 2u);
  const auto audit = audit_projection(m, f.x);
  EXPECT_TRUE(audit.cubes_to_points);
  EXPECT_TRUE(audit.polygons_to_polygons);
  EXPECT_TRUE(audit.polygonal_edges_bijective);
  EXPECT_EQ(audit.min_polygonal_run, 2);
  EXPECT_EQ(audit.max_polygonal_run, 2);
  EXPECT_LE(audit.max_cubical_run, m.tau);
}

TEST(Mixed, LineFiberSegmentsBoundedByTruncation) {
  FreeProduct group{{FactorGroup::cyclic(2, "a"), FactorGroup::free(1, {"t"})}};
  const int radius = 2;
  Alphabet alphabet{group, radius};
  const Relator r = alphabet.to_letters(group.parse("1:1 2:1,1 1:1 2:-1"));
  std::vector<int> sides(8);
  std::iota(sides.begin(), sides.end(), 0);
  const auto d = AbstractDiagram::from_side_labels(4, {sides});
  const std::vector<Relator> face_relators{r};
  const auto x = complex_from_diagram(d, &alphabet, &face_relators);
  // Z/2 reflects a path of length two about its middle vertex.
  const auto reflect = Fiber::from_permutations(group.factor(0), 3, {{0, 1}, {1, 2}}, {}, 0, {{2, 1, 0}}, "path");
  const auto m = build_mixed(x, group, alphabet, {reflect, Fiber::line(group.factor(1), radius)});
  EXPECT_EQ(m.tau, radius);
  EXPECT_TRUE(polygons_are_closed_paths(m));
  const auto audit = audit_projection(m, x);
  EXPECT_TRUE(audit.ok());
  EXPECT_EQ(audit.min_polygonal_run, 2);
  EXPECT_EQ(audit.max_polygonal_run, 2);
  EXPECT_LE(audit.max_cubical_run, radius);
  // Boundary length: 8 polygonal edges, 2 + 2 through the Z/2 fibers, 2 + 1 through the line.
  ASSERT_EQ(m.polygons.size(), 1u);
  EXPECT_EQ(m.polygons[0].edges.size(), 8u + 4u + 3u);
  EXPECT_THROW(build_mixed(x, group, alphabet, {reflect, Fiber::line(group.factor(1), 1)}), ResourceLimit);
}

TEST(Mixed, InversionIsRejected) {
  FreeProduct group{{FactorGroup::cyclic(2, "a"), FactorGroup::cyclic(3, "b")}};
  const auto square = Fiber::from_permutations(group.factor(0), 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {{0, 1, 2, 3}}, 0,
                                               {{1, 0, 3, 2}}, "square");
  EXPECT_TRUE(square.has_inversion());
  Alphabet alphabet{group, 1};
  Relator r;
  for (int i = 0; i < 3; ++i) {
    const auto w = alphabet.to_letters(group.parse("1:1 2:1"));
    r.insert(r.end(), w.begin(), w.end());
  }
  const auto x = build_XR_finite(group, alphabet, {r}, finite_quotient(group, alphabet, {r}));
  EXPECT_THROW(build_mixed(x, group, alphabet, {square, Fiber::point()}), InvalidArgument);
  // Swapping two opposite corners inverts no edge.
  const auto diagonal = Fiber::from_permutations(group.factor(0), 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {{0, 1, 2, 3}},
                                                 1, {{2, 1, 0, 3}}, "square");
  EXPECT_FALSE(diagonal.has_inversion());
  EXPECT_NO_THROW(build_mixed(x, group, alphabet, {diagonal, Fiber::point()}));
}

TEST(Mixed, PermutationFiberGuards) {
  const auto z2 = FactorGroup::cyclic(2, "a");
  // A 3-cycle cannot represent an element of order two.
  EXPECT_THROW(Fiber::from_permutations(z2, 3, {}, {}, 0, {{1, 2, 0}}), InvalidArgument);
  // Not an automorphism of the path 0-1-2.
  EXPECT_THROW(Fiber::from_permutations(z2, 3, {{0, 1}, {1, 2}}, {}, 0, {{1, 0, 2}}), InvalidArgument);
  EXPECT_THROW(Fiber::line(z2, 2), InvalidArgument);
}

TEST(Mixed, NeedsDecoratedPolygons) {
  FreeProduct group{{FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")}};
  Alphabet alphabet{group, 1};
  std::vector<int> sides(8);
  std::iota(sides.begin(), sides.end(), 0);
  const auto x = complex_from_diagram(AbstractDiagram::from_side_labels(4, {sides}));
  EXPECT_THROW(build_mixed(x, group, alphabet, {Fiber::point(), Fiber::point()}), InvalidArgument);
}

TEST(MixedIo, RoundTrip) {
  Fixture f;
  const auto m = build_mixed(f.x, f.group, f.alphabet, {tripod(f.group.factor(0)), tripod(f.group.factor(1))});
  const auto text = write_mixed(m);
  EXPECT_NE(text.find("CUBES"), std::string::npos);
  EXPECT_NE(text.find("PROJECTION"), std::string::npos);
  EXPECT_EQ(write_mixed(read_mixed(text)), text);
  EXPECT_THROW(read_mixed("fpd-mixed 1\nGEODESIC x\nTAU 0\nFIBERS 0\nVERTICES 1\n0 C -1 -1\nEDGES 1\n0 0 5 P\n"),
               ParseError);
}
