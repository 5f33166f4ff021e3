#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpd/complex.hpp"

namespace fpd {

/// A finite cube complex of dimension <= 2 with a cellular action of one
/// factor group. Infinite fibers are truncated; `act` returns nullopt when
/// the image leaves the truncation.
struct Fiber {
  int vertex_count = 1;
  std::vector<std::pair<int, int>> edges;
  /// Squares as four vertices in cyclic order.
  std::vector<std::array<int, 4>> squares;
  int basepoint = 0;
  std::function<std::optional<int>(const Element&, int)> act;
  /// Elements whose action is checked for edge inversions.
  std::vector<Element> checked_elements;
  std::string description;

  /// A single point with the trivial action.
  static Fiber point();
  /// The segment [-m, m] of the line with Z translating, cut into unit
  /// edges of length 1/step; vertex (j + m) step is the integer j and the
  /// basepoint is 0. `group` must be Z.
  static Fiber line(const FactorGroup& group, int m, int step = 1);
  /// A finite cube complex with the action generated by one vertex
  /// permutation per defining generator. Throws InvalidArgument when the
  /// permutations do not define an action by automorphisms.
  static Fiber from_permutations(const FactorGroup& group, int vertex_count, std::vector<std::pair<int, int>> edges,
                                 std::vector<std::array<int, 4>> squares, int basepoint,
                                 const std::vector<std::vector<int>>& generator_perms, std::string description = "");

  /// True when some checked element swaps the two ends of an edge.
  bool has_inversion() const;
};

enum class MixedEdgeKind { Polygonal, Cubical };

struct MixedVertex {
  ComplexVertexKind kind = ComplexVertexKind::Central;
  int factor = -1;
  /// Fiber vertex for vertices in a fiber copy, -1 otherwise.
  int fiber_vertex = -1;
};

struct MixedEdge {
  int u = 0;
  int v = 0;
  MixedEdgeKind kind = MixedEdgeKind::Polygonal;
};

struct MixedComplex {
  std::vector<MixedVertex> vertices;
  std::vector<MixedEdge> edges;
  std::vector<std::array<int, 4>> squares;
  /// Closed edge paths: edges[j] joins vertices[j] and vertices[j + 1].
  std::vector<Polygon> polygons;
  /// Projection to the base complex: every vertex goes to a base vertex;
  /// polygonal edges go to base edges and cubical edges to -1 (a point).
  std::vector<int> vertex_projection;
  std::vector<int> edge_projection;
  std::vector<int> polygon_projection;
  std::string geodesic_choice = "lexicographic";
  /// Length of the longest chosen fiber geodesic.
  int tau = 0;
  std::vector<std::string> fiber_descriptions;
};

/// Replaces each factor vertex by a copy of its factor's fiber and reroutes
/// every polygon through the chosen fiber geodesics: at a corner with letter
/// x entering along an edge attached at g.b, the path follows g.alpha_x,
/// where alpha_x is the lexicographically least geodesic from b to x.b.
/// Needs decorated polygons. Throws InvalidArgument for fibers with edge
/// inversions or inconsistent decorations, and ResourceLimit when a
/// truncated fiber is too small.
MixedComplex build_mixed(const PolygonalComplex& x, const FreeProduct& group, const Alphabet& alphabet,
                         const std::vector<Fiber>& fibers);

/// Replaces every polygonal edge by a path of 2k edges, leaving cubical
/// edges alone. The result projects onto subdivide(base, k) with matching
/// vertex and edge ids.
MixedComplex subdivide_polygonal(const MixedComplex& m, const PolygonalComplex& base, int k);

struct ProjectionAudit {
  bool cubes_to_points = true;
  bool polygons_to_polygons = true;
  /// Each base edge has exactly one polygonal preimage.
  bool polygonal_edges_bijective = true;
  /// Shortest and longest maximal polygonal run along polygon boundaries,
  /// and the longest cubical run.
  int min_polygonal_run = 0;
  int max_polygonal_run = 0;
  int max_cubical_run = 0;

  bool ok() const { return cubes_to_points && polygons_to_polygons && polygonal_edges_bijective; }
};
ProjectionAudit audit_projection(const MixedComplex& m, const PolygonalComplex& base);

/// Text sections VERTICES / EDGES / POLYGONS / CUBES / PROJECTION.
std::string write_mixed(const MixedComplex& m);
MixedComplex read_mixed(const std::string& text);

}  // namespace fpd
