#pragma once

#include <cstdint>
#include <vector>

#include "fpd/diagram.hpp"
#include "fpd/rng.hpp"

namespace fpd {

/// Canonical code of the underlying typed 2-complex: equal codes iff the
/// complexes are isomorphic (cells, incidences and vertex types), ignoring
/// distinguished vertices, orientations and the face partition.
std::vector<int> geometric_canonical_form(const AbstractDiagram& d);
/// Canonical code that also respects distinguished vertices, orientations
/// and the face partition up to renaming classes.
std::vector<int> labelled_canonical_form(const AbstractDiagram& d);
/// Relabels vertices, edges and faces into the labelled canonical order.
/// Faces are listed in reading direction (orientation +1). `face_order`
/// receives the original index of each canonical face.
AbstractDiagram canonicalize(const AbstractDiagram& d, std::vector<int>* face_order = nullptr);

struct DualConnector {
  int weight = 1;
  /// Type of the vertex the connector starts at.
  bool starts_at_factor = true;

  friend bool operator==(const DualConnector&, const DualConnector&) = default;
};

struct DualTraversal {
  int connector = 0;
  int sign = 1;

  friend bool operator==(const DualTraversal&, const DualTraversal&) = default;
};

struct DualFace {
  /// Cyclic order of connector traversals around the face, read in the
  /// face's positive direction.
  std::vector<DualTraversal> traversals;
  /// Edge offset of the distinguished vertex from the start of traversals[0].
  int offset = 0;
  int orientation = 1;
  int cls = 0;

  friend bool operator==(const DualFace&, const DualFace&) = default;
};

/// Bipartite graph on faces and connectors: one signed edge per traversal,
/// cyclically ordered around each face vertex, connector vertices weighted by
/// their length.
struct WeightedDecoratedDualGraph {
  int half_length = 0;
  std::vector<DualConnector> connectors;
  std::vector<DualFace> faces;

  /// Face-connector incidence multiset, forgetting signs and order.
  std::vector<std::vector<int>> undecorated() const;

  friend bool operator==(const WeightedDecoratedDualGraph&, const WeightedDecoratedDualGraph&) = default;
};

/// Requires a diagram without backtracking faces.
WeightedDecoratedDualGraph encode_dual(const AbstractDiagram& d);
/// Rebuilds the diagram. Throws InvalidArgument when the graph violates the
/// weight or bipartiteness invariants.
AbstractDiagram decode_dual(const WeightedDecoratedDualGraph& g);

struct EnumerationResult {
  /// One representative per geometric class, in canonical-code order.
  std::vector<AbstractDiagram> classes;
  /// Dual-graph candidates examined.
  std::uint64_t candidates = 0;
};

/// Connected gluings of at most k 2l-gons, without backtracking in any face
/// boundary, whose 1-skeleton is a union of at most m connectors, up to
/// isomorphism. Generated through weighted decorated dual graphs. Throws
/// BudgetExceeded after `budget` candidates. With `simple_only`, each face
/// traverses each connector at most once (a simple dual graph).
EnumerationResult enumerate_bounded(int k, int m, int half_length, std::uint64_t budget = 50'000'000,
                                    bool simple_only = false);

/// Disc diagrams with at most k faces, built by attaching faces along
/// boundary arcs, up to isomorphism.
std::vector<AbstractDiagram> enumerate_discs(int k, int half_length);

/// A random connected gluing of `faces` polygons without backtracking.
/// Random orientations, distinguished vertices and face classes.
AbstractDiagram random_diagram(int faces, int half_length, double glue_probability, Rng& rng);

}  // namespace fpd
