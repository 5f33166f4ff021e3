#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpd/sampler.hpp"
#include "fpd/word.hpp"

namespace fpd {

enum class VertexKind { Central, Factor };

/// Edges always join a factor vertex to a central vertex.
struct DiagramEdge {
  int factor_end = 0;
  int central_end = 0;

  friend bool operator==(const DiagramEdge&, const DiagramEdge&) = default;
};

/// A 2l-gon. `edges` lists the boundary cyclically in the face's positive
/// direction, starting with the edge that leaves the distinguished factor
/// vertex. Reading direction is the positive one when orientation is +1 and
/// the reverse when it is -1.
struct Face {
  std::vector<int> edges;
  int orientation = 1;
  int cls = 0;

  friend bool operator==(const Face&, const Face&) = default;
};

/// Two consecutive boundary edges of a face at one of its vertices. For
/// factor corners `index` is the letter position in reading order.
struct Corner {
  int face = 0;
  int index = 0;
  int vertex = 0;
  int in_edge = 0;
  int out_edge = 0;
};

class AbstractDiagram {
 public:
  AbstractDiagram() = default;
  /// Validates bipartiteness, face lengths and the face boundary chains.
  AbstractDiagram(int half_length, std::vector<VertexKind> kinds, std::vector<DiagramEdge> edges,
                  std::vector<Face> faces);

  /// Glues polygons: side_edge[p][s] is the edge carrying side s of polygon
  /// p. Vertex 0 of every polygon is a factor vertex; vertices are identified
  /// only where the side gluing forces it. Faces get orientation +1, their own
  /// class and vertex 0 as distinguished vertex.
  static AbstractDiagram from_side_labels(int half_length, const std::vector<std::vector<int>>& side_edge);

  int half_length() const { return half_length_; }
  int boundary_length_of_faces() const { return 2 * half_length_; }
  int vertex_count() const { return static_cast<int>(kinds_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int area() const { return static_cast<int>(faces_.size()); }
  VertexKind kind(int v) const { return kinds_[v]; }
  const std::vector<VertexKind>& kinds() const { return kinds_; }
  const DiagramEdge& edge(int e) const { return edges_[e]; }
  const std::vector<DiagramEdge>& edges() const { return edges_; }
  const Face& face(int f) const { return faces_[f]; }
  const std::vector<Face>& faces() const { return faces_; }
  int class_count() const;

  /// Vertex i of face f in the positive direction (vertex 0 distinguished).
  int face_vertex(int f, int i) const;
  /// Boundary edges in reading order, starting at the distinguished vertex.
  std::vector<int> reading_edges(int f) const;
  /// The l factor corners of face f in reading order.
  std::vector<Corner> factor_corners(int f) const;
  /// All 2l corners of every face (factor and central).
  std::vector<Corner> all_corners() const;

  /// Face incidences per edge, with multiplicity.
  std::vector<int> edge_degrees() const;
  /// Graph degree of each vertex.
  std::vector<int> vertex_degrees() const;
  /// Number of edges with face-degree 1.
  int boundary_length() const;
  bool has_backtracking() const;
  bool is_connected() const;
  int euler_characteristic() const { return vertex_count() - edge_count() + area(); }
  /// Connected surface with one boundary circle and Euler characteristic 1.
  bool is_disc() const;

  AbstractDiagram with_faces(std::vector<Face> faces) const;
  /// Subcomplex spanned by the given faces (unused cells dropped).
  AbstractDiagram subdiagram(const std::vector<int>& face_ids) const;

  friend bool operator==(const AbstractDiagram&, const AbstractDiagram&) = default;

 private:
  int half_length_ = 0;
  std::vector<VertexKind> kinds_;
  std::vector<DiagramEdge> edges_;
  std::vector<Face> faces_;
};

/// Sum over edges of (deg(e) - 1).
std::int64_t cancellation(const AbstractDiagram& d);

/// Relative degree of the ordered edge triple (e1, v, e2). A face fully
/// contains it when one of its corners at v uses exactly e1 and e2; it
/// partially contains it when one of its corners at v uses exactly one of them.
int relative_degree(const AbstractDiagram& d, int e1, int v, int e2);
/// Twice the relative cancellation (always an integer).
std::int64_t relative_cancellation_x2(const AbstractDiagram& d);
inline double relative_cancellation(const AbstractDiagram& d) {
  return static_cast<double>(relative_cancellation_x2(d)) / 2.0;
}

/// A maximal segment whose internal vertices have degree 2, or a cycle with at
/// most one vertex of higher degree. Edges are listed from start to end.
struct Connector {
  std::vector<int> edges;
  int start = 0;
  int end = 0;
  bool cycle = false;
};
std::vector<Connector> connectors(const AbstractDiagram& d);
bool is_km_bounded(const AbstractDiagram& d, int k, int m);

/// Pairs of adjacent faces that bear the same relator (same class, or the
/// same relator in `face_relator` when given), have opposite orientations,
/// and share an edge at the same reading position.
std::vector<std::pair<int, int>> reduction_pairs(const AbstractDiagram& d,
                                                 const std::vector<int>* face_relator = nullptr);
inline bool is_reduced(const AbstractDiagram& d, const std::vector<int>* face_relator = nullptr) {
  return reduction_pairs(d, face_relator).empty();
}

/// A decoration: relator index per class and a rotation element (alphabet
/// letter) per factor corner, rotation[f][k] for letter k of face f.
struct Decoration {
  std::vector<int> class_relator;
  std::vector<std::vector<int>> rotation;
};

struct FulfillOptions {
  int max_classes = 8;
  std::uint64_t max_nodes = 2'000'000;
  /// Distinct classes bear distinct relators.
  bool distinct_relators = true;
};

/// Searches for a decoration satisfying the fulfillability conditions:
/// rotation elements at each factor vertex lie in one factor; each ordered
/// edge triple gets one element (its reverse gets the inverse); and around a
/// factor vertex whose link is a single cycle the product is trivial.
/// `fixed` pins the relator of some classes (-1 = free).
std::optional<Decoration> fulfill(const AbstractDiagram& d, const FreeProduct& group, const Alphabet& alphabet,
                                  const std::vector<Relator>& relators, const FulfillOptions& options = {},
                                  const std::vector<int>& fixed = {});

/// Checks the fulfillability conditions for a complete decoration, including
/// that every face spells its relator.
bool decoration_is_valid(const AbstractDiagram& d, const FreeProduct& group, const Alphabet& alphabet,
                         const std::vector<Relator>& relators, const Decoration& dec);

/// Longest common run of letters between cyclic r1 and cyclic r2 or r2^-1,
/// i.e. the largest number of degree-2 factor vertices on a shared path of a
/// 2-face diagram. With `same_relator`, the identical overlap at shift 0 is
/// excluded. Capped at l.
int max_piece(const Relator& r1, const Relator& r2, const Alphabet& alphabet, bool same_relator);

struct PieceStats {
  int max_piece = 0;
  int length = 0;
  double lambda = 0.0;
  bool c_prime_sixth = true;
};
/// Over all ordered pairs of distinct relators and each relator with itself.
/// Duplicate relators are counted once.
PieceStats piece_stats(const std::vector<Relator>& relators, const Alphabet& alphabet);

struct GreendlingerResult {
  bool conclusion = false;
  std::vector<int> witness_faces;
  std::vector<int> external_edges;
  bool hypothesis = false;
  /// False when the hypothesis was only checked on subcomplexes of area <= 6.
  bool hypothesis_exhaustive = true;
};
/// External edges of a face are its boundary edges of degree <= 1.
GreendlingerResult greendlinger_check(const AbstractDiagram& d, double density);

/// Two faces bearing r1 (face 0) and r2 (face 1) glued along a run of `run`
/// matching letters starting at letter k1 of r1 and k2 of r2. In `same_direction`
/// mode both faces read the path the same way (letters equal); otherwise face 1
/// reads it backwards (letters inverse). `extend_before`/`extend_after` also
/// glue the edge beyond each end of the run.
AbstractDiagram glue_two_faces(int half_length, int k1, int k2, int run, bool same_direction, bool extend_before,
                               bool extend_after);

}  // namespace fpd
