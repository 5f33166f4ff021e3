#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fpd/complex.hpp"
#include "fpd/mixed.hpp"

namespace fpd {

/// A cube of dimension k >= 2 given by its 2^k corners: corner b sits at
/// position b, and corners b and b ^ (1 << i) are joined by an edge.
struct Cube {
  int dimension = 2;
  std::vector<int> corners;
};

/// A finite mixed polygonal-cubical complex: even polygons and cubes glued
/// along a common 1-skeleton.
class CellComplex {
 public:
  CellComplex() = default;
  /// Validates edge ends, closed polygon paths, and that every cube edge is
  /// present in `edges`.
  CellComplex(int vertex_count, std::vector<std::pair<int, int>> edges, std::vector<Polygon> polygons,
              std::vector<Cube> cubes = {});

  static CellComplex from(const PolygonalComplex& x);
  static CellComplex from(const MixedComplex& m);
  /// The standard k-cube (k >= 1) with vertex b at corner b.
  static CellComplex cube(int k);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<Polygon>& polygons() const { return polygons_; }
  const std::vector<Cube>& cubes() const { return cubes_; }
  /// Edge id joining corners b and b ^ (1 << i) of cube c.
  int cube_edge(int c, int b, int i) const;
  /// Breadth-first distances in the 1-skeleton (-1 when unreachable).
  std::vector<int> distances_from(int v) const;
  /// Longest polygon boundary (0 without polygons).
  int max_polygon_length() const;

 private:
  int vertex_count_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Polygon> polygons_;
  std::vector<Cube> cubes_;
  /// cube_edges_[c][b * k + i] for corner b and direction i.
  std::vector<std::vector<int>> cube_edges_;
  std::vector<std::vector<int>> adjacency_;
};

enum class HyperCellKind { PolygonSegment, Midcube };

/// One edge of the abstract hyperstructure: a diameter segment of a polygon
/// (joining the midpoints of the edges at `position` and position + L/2) or
/// a 1-dimensional piece of a midcube.
struct HyperLink {
  int a = 0;
  int b = 0;
  HyperCellKind kind = HyperCellKind::PolygonSegment;
  int cell = 0;
  /// Polygon position of `a`'s edge, or the cube direction dual to the midcube.
  int position = 0;
};

struct Hypergraph {
  /// Ambient edge ids of the opposite-edge class, sorted; abstract vertex i is nodes[i].
  std::vector<int> nodes;
  std::vector<HyperLink> links;
  /// Cells whose interior meets the hyperstructure, as (kind, id) sorted.
  std::vector<std::pair<HyperCellKind, int>> carrier;

  int node_of(int edge) const;
  bool contains(int edge) const { return node_of(edge) >= 0; }
  /// Path metric on abstract vertices (-1 when unreachable).
  std::vector<int> distances_from(int node) const;
};

/// Closure of the opposite-edge relation from `seed`. Throws OddPolygon when
/// a polygon has odd length.
Hypergraph trace_hypergraph(const CellComplex& x, int seed);
/// Every hypergraph of the complex, one per class, ordered by least edge id.
std::vector<Hypergraph> all_hypergraphs(const CellComplex& x);

/// No cell carries two pieces of the hyperstructure and no diameter joins an
/// edge to itself.
bool is_embedded(const Hypergraph& h);
/// Embedded, and the incidence graph of abstract vertices and the cells
/// through them is a tree. Exact for complexes of dimension <= 2.
bool is_embedded_tree(const Hypergraph& h);

struct ComplementComponents {
  int count = 0;
  /// Component id per ambient vertex.
  std::vector<int> label;
};
/// Components of X minus h on the cut model. Throws NotEmbedded.
ComplementComponents complement_components(const CellComplex& x, const Hypergraph& h);

struct Wall {
  Hypergraph hypergraph;
  /// Halfspace (0 or 1) per ambient vertex; side 0 holds the first end of the
  /// least edge in the class.
  std::vector<std::uint8_t> side;
};
/// Throws NotEmbedded or WallNotTwoSided.
Wall make_wall(const CellComplex& x, Hypergraph h);

struct Wallspace {
  std::vector<Wall> walls;
  /// Hypergraphs that were not embedded or not two-sided.
  int rejected = 0;

  /// All four halfspace intersections are non-empty.
  bool crosses(int i, int j) const;
  /// (side of wall i, side of wall j) pairs with a common vertex, as a bit
  /// mask over 2 * si + sj.
  int intersection_pattern(int i, int j) const;
};
/// Walls from all hypergraphs of the complex; unusable ones are counted.
Wallspace wallspace_of(const CellComplex& x);

/// A point of the 1-skeleton: a vertex or the midpoint of an edge.
struct SkeletonPoint {
  bool is_vertex = false;
  int id = 0;
  friend bool operator==(const SkeletonPoint&, const SkeletonPoint&) = default;
};

/// Image of a hyperstructure in a base polygonal complex. Segments come from
/// polygon diameters; midcube pieces are collapsed.
struct ProjectedHypergraph {
  std::vector<SkeletonPoint> points;
  std::vector<std::pair<int, int>> segments;
  /// Base polygon carrying each segment.
  std::vector<int> segment_polygon;
};
/// An edge hypergraph viewed as its own projection.
ProjectedHypergraph as_projected(const CellComplex& x, const Hypergraph& h);
/// Projects a hyperstructure of the mixed complex to the base.
ProjectedHypergraph project_hypergraph(const MixedComplex& m, const Hypergraph& w);

struct AntipodalityReport {
  /// Extremes over segments of d(x, x') / L, with L the carrying polygon's length.
  double min_ratio = 0.5;
  double max_ratio = 0.5;
  int segments = 0;
};
AntipodalityReport antipodality(const CellComplex& base, const ProjectedHypergraph& z);
/// min_ratio >= 1/2 - epsilon.
bool check_epsilon(const AntipodalityReport& r, double epsilon);

struct QiStats {
  /// Least lambda >= 1 with d_W / lambda - c <= d_X / L <= lambda d_W + c
  /// for the fixed slack c.
  double lambda = 1.0;
  double slack = 0.5;
  int pairs = 0;
};
QiStats qi_stats(const CellComplex& x, const Hypergraph& h, double slack = 0.5);

struct SeparationReport {
  int count = 0;
  int distance = 0;
  /// 1/2 (1/6 - d - epsilon)(d(p, q) - 6L).
  double lower_bound = 0.0;
  bool vacuous = true;
  bool satisfied = true;
};
SeparationReport separating_wall_count(const Wallspace& ws, const CellComplex& x, int p, int q, double density,
                                       double epsilon);

/// Index of a hypergraph dual to an edge of gamma that crosses gamma exactly
/// once, preferring the earliest such edge.
std::optional<int> single_crossing_search(const std::vector<Hypergraph>& hypergraphs, const std::vector<int>& gamma);
/// For every window of `window` consecutive edges of gamma, whether some
/// edge in it is dual to a hypergraph crossing gamma exactly once.
std::vector<bool> single_crossing_windows(const std::vector<Hypergraph>& hypergraphs, const std::vector<int>& gamma,
                                          int window);

/// A finite cube complex: every cube (edges included) is listed by its 2^k
/// corners as in Cube.
struct CubeComplexData {
  int vertex_count = 0;
  std::vector<std::vector<int>> cubes;
};

struct DualCubeComplex {
  /// Orientation per 0-cube: bit i is the chosen halfspace of wall i.
  std::vector<std::uint64_t> orientations;
  /// Cubes of dimension >= 1 as (base 0-cube, mask of flipped walls) with
  /// all flipped walls at side 0 in the base.
  std::vector<std::pair<int, std::uint64_t>> cubes;
  /// f_vector[k] = number of k-cubes.
  std::vector<std::int64_t> f_vector;
  int dimension = 0;

  CubeComplexData as_data() const;
};
/// Sageev's construction on the walls' vertex halfspaces. Throws
/// BudgetExceeded above `wall_budget` walls.
DualCubeComplex dual_cube_complex(const Wallspace& ws, int wall_budget = 20);

/// Every vertex link is a flag simplicial complex.
bool link_flag_check(const CubeComplexData& c);

struct TwoSidedReport {
  bool passed = false;
  /// Base vertices hit by the projection and base vertices seeing both halfspaces.
  std::vector<int> projected_vertices;
  std::vector<int> shared_vertices;
};
/// Throws WallNotTwoSided when the complement in the mixed complex does not
/// have exactly two components.
TwoSidedReport two_sided_projection_check(const MixedComplex& m, const Hypergraph& w);

/// Text format "fpd-wallspace 1" with one line per wall: its class and sides.
std::string write_wallspace(const Wallspace& ws);
/// Text format "fpd-dual 1" with orientations, cubes and the f-vector.
std::string write_dual(const DualCubeComplex& c);

}  // namespace fpd
