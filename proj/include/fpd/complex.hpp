#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "fpd/coset.hpp"
#include "fpd/diagram.hpp"
#include "fpd/sampler.hpp"

namespace fpd {

enum class ComplexVertexKind { Central, Factor, Subdivision };

struct ComplexVertex {
  ComplexVertexKind kind = ComplexVertexKind::Central;
  /// Factor index for factor vertices, -1 otherwise.
  int factor = -1;

  friend bool operator==(const ComplexVertex&, const ComplexVertex&) = default;
};

struct ComplexEdge {
  int u = 0;
  int v = 0;

  friend bool operator==(const ComplexEdge&, const ComplexEdge&) = default;
};

/// A closed edge path: edges[j] joins vertices[j] and vertices[j + 1]
/// (cyclically). `letters` holds the alphabet letter crossed at each factor
/// vertex in traversal order, or is empty when undecorated.
struct Polygon {
  std::vector<int> vertices;
  std::vector<int> edges;
  std::vector<int> letters;

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

class PolygonalComplex {
 public:
  PolygonalComplex() = default;
  /// Validates the cells: edge ends in range, polygons closed, all polygons
  /// of equal length, and central/factor alternation along edges that do not
  /// touch a subdivision vertex.
  PolygonalComplex(std::vector<ComplexVertex> vertices, std::vector<ComplexEdge> edges, std::vector<Polygon> polygons,
                   int basepoint = 0);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int polygon_count() const { return static_cast<int>(polygons_.size()); }
  const std::vector<ComplexVertex>& vertices() const { return vertices_; }
  const std::vector<ComplexEdge>& edges() const { return edges_; }
  const std::vector<Polygon>& polygons() const { return polygons_; }
  const ComplexVertex& vertex(int v) const { return vertices_[v]; }
  const ComplexEdge& edge(int e) const { return edges_[e]; }
  const Polygon& polygon(int p) const { return polygons_[p]; }
  int basepoint() const { return basepoint_; }
  int count(ComplexVertexKind kind) const;
  std::int64_t euler_characteristic() const {
    return static_cast<std::int64_t>(vertex_count()) - edge_count() + polygon_count();
  }
  /// Common boundary length of the polygons (0 without polygons).
  int polygon_length() const { return polygons_.empty() ? 0 : static_cast<int>(polygons_[0].edges.size()); }
  /// Incident edge ids per vertex.
  std::vector<std::vector<int>> incidence() const;
  /// Breadth-first distances in the 1-skeleton (-1 when unreachable).
  std::vector<int> distances_from(int v) const;

  friend bool operator==(const PolygonalComplex&, const PolygonalComplex&) = default;

 private:
  std::vector<ComplexVertex> vertices_;
  std::vector<ComplexEdge> edges_;
  std::vector<Polygon> polygons_;
  int basepoint_ = 0;
};

/// G = (*G_i) / <<R>> for finite factors, with the data needed to read
/// relators as paths on the cosets.
struct FiniteQuotient {
  Presentation presentation;
  std::vector<int> generator_base;
  CosetTable table;
};
/// Throws InvalidArgument for infinite factors and Overflow past `max_cosets`.
FiniteQuotient finite_quotient(const FreeProduct& group, const Alphabet& alphabet, const std::vector<Relator>& relators,
                               int max_cosets = 1'000'000);

/// Central vertices are the elements of G, factor vertices the cosets gG_i,
/// edges join g to gG_i, and there is one polygon per closed path reading a
/// relator (paths with the same edge cycle give one polygon). Vertex ids:
/// central vertex g is coset g. Rejects an empty relator set.
PolygonalComplex build_XR_finite(const FreeProduct& group, const Alphabet& alphabet,
                                 const std::vector<Relator>& relators, const FiniteQuotient& quotient);

/// One polygon per face of the diagram, traversed in reading order from the
/// distinguished vertex. With a decoration, factor vertices get the factor of
/// their letters and polygons carry the relator letters.
PolygonalComplex complex_from_diagram(const AbstractDiagram& d, const Alphabet* alphabet = nullptr,
                                      const std::vector<Relator>* face_relators = nullptr);

using Rational = boost::rational<std::int64_t>;

struct SubdivisionParams {
  Rational density;
  int half_length = 0;
  std::int64_t tau = 0;
  Rational epsilon;
  std::int64_t k = 0;
  std::int64_t polygon_length = 0;
};
/// epsilon = min(1/5 - d, 1/l) / 2, k = ceil(tau / (4 epsilon)) + 1 and
/// L = 4 k l, in exact arithmetic. Throws DensityTooHigh when d >= 1/5.
SubdivisionParams subdivision_params(const Density& d, int half_length, std::int64_t tau);

/// Replaces every edge by a path of 2k edges through new subdivision vertices.
PolygonalComplex subdivide(const PolygonalComplex& x, int k);

struct EmbeddedCycle {
  std::vector<int> vertices;
  std::vector<int> edges;
};
/// All embedded cycles of the 1-skeleton shorter than `bound`, each listed
/// once. Throws BudgetExceeded after `budget` search steps.
std::vector<EmbeddedCycle> short_cycle_audit(const PolygonalComplex& x, int bound,
                                             std::uint64_t budget = 50'000'000);

/// Text sections VERTICES / EDGES / POLYGONS with stable ids.
std::string write_complex(const PolygonalComplex& x);
PolygonalComplex read_complex(const std::string& text);

}  // namespace fpd
