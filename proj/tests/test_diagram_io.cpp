#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fpd/diagram_io.hpp"
#include "fpd/dual_graph.hpp"
#include "fpd/error.hpp"

using namespace fpd;

namespace {

// Renames vertices and edges by random permutations and shuffles the face list.
AbstractDiagram relabel(const AbstractDiagram& d, Rng& rng) {
  auto perm = [&](int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.below(i + 1)]);
    return p;
  };
  const auto pv = perm(d.vertex_count());
  const auto pe = perm(d.edge_count());
  const auto pf = perm(d.area());
  std::vector<VertexKind> kinds(d.vertex_count());
  for (int v = 0; v < d.vertex_count(); ++v) kinds[pv[v]] = d.kind(v);
  std::vector<DiagramEdge> edges(d.edge_count());
  for (int e = 0; e < d.edge_count(); ++e) edges[pe[e]] = DiagramEdge{pv[d.edge(e).factor_end], pv[d.edge(e).central_end]};
  std::vector<Face> faces(d.area());
  for (int f = 0; f < d.area(); ++f) {
    Face face = d.face(f);
    for (int& e : face.edges) e = pe[e];
    faces[pf[f]] = face;
  }
  return AbstractDiagram(d.half_length(), kinds, edges, faces);
}

}  // namespace

TEST(DiagramIo, RoundTripOnRandomDiagrams) {
  Rng rng(404);
  for (int i = 0; i < 200; ++i) {
    const auto d = random_diagram(1 + static_cast<int>(rng.below(3)), 2 + static_cast<int>(rng.below(3)), 0.3, rng);
    const std::string text = write_diagram(d);
    const auto back = read_diagram(text);
    EXPECT_FALSE(back.decoration);
    ASSERT_EQ(labelled_canonical_form(back.diagram), labelled_canonical_form(d)) << text;
    EXPECT_EQ(write_diagram(back.diagram), text);
  }
}

TEST(DiagramIo, EqualDiagramsSerializeIdentically) {
  Rng rng(405);
  for (int i = 0; i < 100; ++i) {
    const auto d = random_diagram(1 + static_cast<int>(rng.below(3)), 3, 0.3, rng);
    EXPECT_EQ(write_diagram(relabel(d, rng)), write_diagram(d));
  }
}

TEST(DiagramIo, DecorationSurvivesRoundTrip) {
  FreeProduct group{{FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")}};
  Alphabet alphabet{group, 1};
  ModelParams p;
  p.factors = group.factors();
  p.length = 4;
  p.density = {1, 2};
  const Model model(p);
  Rng rng(77);
  int checked = 0;
  for (int i = 0; i < 300 && checked < 20; ++i) {
    const auto rs = sample_relator_set(model, rng).relators;
    const auto d = random_diagram(1 + static_cast<int>(rng.below(3)), 4, 0.25, rng);
    FulfillOptions opt;
    opt.distinct_relators = false;
    const auto dec = fulfill(d, group, alphabet, rs, opt);
    if (!dec) continue;
    ++checked;
    const auto back = read_diagram(write_diagram(d, &*dec));
    ASSERT_TRUE(back.decoration);
    EXPECT_TRUE(decoration_is_valid(back.diagram, group, alphabet, rs, *back.decoration));
  }
  EXPECT_GT(checked, 0);
}

TEST(DiagramIo, SingleFaceText) {
  const auto d = AbstractDiagram::from_side_labels(1, {{0, 1}});
  EXPECT_EQ(write_diagram(d), "fpd-diagram 1\nhalf_length 1\nvertices 2\nF C\nedges 2\n0 1\n0 1\nfaces 1\n1 0 : 0 1\nend\n");
}

TEST(DiagramIo, RejectsMalformedInput) {
  EXPECT_THROW(read_diagram(""), ParseError);
  EXPECT_THROW(read_diagram("fpd-diagram 2\n"), ParseError);
  EXPECT_THROW(read_diagram("fpd-diagram 1\nhalf_length 1\nvertices 2\nF X\n"), ParseError);
  EXPECT_THROW(read_diagram("fpd-diagram 1\nhalf_length 1\nvertices 2\nF C\nedges 2\n0 1\n0 1\nfaces 1\n1 0 : 0 1\n"),
               ParseError);
  // Well formed text whose cells break the diagram invariants.
  EXPECT_THROW(read_diagram("fpd-diagram 1\nhalf_length 1\nvertices 2\nF C\nedges 2\n0 1\n1 0\nfaces 1\n1 0 : 0 1\nend\n"),
               InvalidArgument);
}
