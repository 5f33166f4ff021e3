#include "fpd/walls.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "fpd/error.hpp"

namespace fpd {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

std::vector<int> bfs(const std::vector<std::vector<int>>& adjacency, int start) {
  std::vector<int> dist(adjacency.size(), -1);
  std::queue<int> q;
  dist[start] = 0;
  q.push(start);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adjacency[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

}  // namespace

CellComplex::CellComplex(int vertex_count, std::vector<std::pair<int, int>> edges, std::vector<Polygon> polygons,
                         std::vector<Cube> cubes)
    : vertex_count_(vertex_count), edges_(std::move(edges)), polygons_(std::move(polygons)), cubes_(std::move(cubes)) {
  if (vertex_count_ < 0) throw InvalidArgument("negative vertex count");
  adjacency_.assign(vertex_count_, {});
  std::map<std::pair<int, int>, int> by_ends;
  for (int e = 0; e < edge_count(); ++e) {
    const auto [u, v] = edges_[e];
    if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_) throw InvalidArgument("edge end out of range");
    adjacency_[u].push_back(v);
    if (u != v) adjacency_[v].push_back(u);
    by_ends.emplace(std::minmax(u, v), e);
  }
  for (const auto& p : polygons_) {
    const std::size_t n = p.edges.size();
    if (n == 0 || p.vertices.size() != n) throw InvalidArgument("polygon boundary is not a closed path");
    for (std::size_t j = 0; j < n; ++j) {
      const int e = p.edges[j];
      if (e < 0 || e >= edge_count()) throw InvalidArgument("polygon edge out of range");
      const auto ends = std::minmax(p.vertices[j], p.vertices[(j + 1) % n]);
      if (std::minmax(edges_[e].first, edges_[e].second) != ends) {
        throw InvalidArgument("polygon boundary is not a closed path");
      }
    }
  }
  for (const auto& c : cubes_) {
    const int k = c.dimension;
    if (k < 2 || k > 16 || c.corners.size() != (std::size_t{1} << k)) throw InvalidArgument("malformed cube");
    std::vector<int> lookup(c.corners.size() * k, -1);
    for (std::size_t b = 0; b < c.corners.size(); ++b) {
      for (int i = 0; i < k; ++i) {
        const auto other = b ^ (std::size_t{1} << i);
        const auto it = by_ends.find(std::minmax(c.corners[b], c.corners[other]));
        if (it == by_ends.end()) throw InvalidArgument("cube edge missing from the 1-skeleton");
        lookup[b * k + i] = it->second;
      }
    }
    cube_edges_.push_back(std::move(lookup));
  }
}

CellComplex CellComplex::from(const PolygonalComplex& x) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : x.edges()) edges.emplace_back(e.u, e.v);
  return CellComplex(x.vertex_count(), std::move(edges), x.polygons());
}

CellComplex CellComplex::from(const MixedComplex& m) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : m.edges) edges.emplace_back(e.u, e.v);
  std::vector<Cube> cubes;
  for (const auto& s : m.squares) cubes.push_back(Cube{2, {s[0], s[1], s[3], s[2]}});
  return CellComplex(static_cast<int>(m.vertices.size()), std::move(edges), m.polygons, std::move(cubes));
}

CellComplex CellComplex::cube(int k) {
  if (k < 1 || k > 16) throw InvalidArgument("cube dimension out of range");
  const int n = 1 << k;
  std::vector<std::pair<int, int>> edges;
  for (int b = 0; b < n; ++b) {
    for (int i = 0; i < k; ++i) {
      if (!(b & (1 << i))) edges.emplace_back(b, b | (1 << i));
    }
  }
  std::vector<Cube> cubes;
  if (k >= 2) {
    Cube c{k, std::vector<int>(n)};
    std::iota(c.corners.begin(), c.corners.end(), 0);
    cubes.push_back(std::move(c));
  }
  return CellComplex(n, std::move(edges), {}, std::move(cubes));
}

int CellComplex::cube_edge(int c, int b, int i) const { return cube_edges_[c][b * cubes_[c].dimension + i]; }

std::vector<int> CellComplex::distances_from(int v) const { return bfs(adjacency_, v); }

int CellComplex::max_polygon_length() const {
  int best = 0;
  for (const auto& p : polygons_) best = std::max(best, static_cast<int>(p.edges.size()));
  return best;
}

int Hypergraph::node_of(int edge) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), edge);
  return it != nodes.end() && *it == edge ? static_cast<int>(it - nodes.begin()) : -1;
}

std::vector<int> Hypergraph::distances_from(int node) const {
  std::vector<std::vector<int>> adjacency(nodes.size());
  for (const auto& l : links) {
    adjacency[l.a].push_back(l.b);
    adjacency[l.b].push_back(l.a);
  }
  return bfs(adjacency, node);
}

namespace {

struct Occurrences {
  /// (polygon, position) per edge.
  std::vector<std::vector<std::pair<int, int>>> polygon;
  /// (cube, direction) per edge, one entry per cube and direction.
  std::vector<std::vector<std::pair<int, int>>> cube;
};

Occurrences occurrences(const CellComplex& x) {
  Occurrences occ;
  occ.polygon.assign(x.edge_count(), {});
  occ.cube.assign(x.edge_count(), {});
  for (int p = 0; p < static_cast<int>(x.polygons().size()); ++p) {
    const auto& edges = x.polygons()[p].edges;
    if (edges.size() % 2 != 0) throw OddPolygon("polygon " + std::to_string(p) + " has odd length");
    for (int j = 0; j < static_cast<int>(edges.size()); ++j) occ.polygon[edges[j]].emplace_back(p, j);
  }
  for (int c = 0; c < static_cast<int>(x.cubes().size()); ++c) {
    const int k = x.cubes()[c].dimension;
    for (int b = 0; b < (1 << k); ++b) {
      for (int i = 0; i < k; ++i) {
        if (!(b & (1 << i))) occ.cube[x.cube_edge(c, b, i)].emplace_back(c, i);
      }
    }
  }
  for (auto& list : occ.cube) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return occ;
}

Hypergraph trace(const CellComplex& x, const Occurrences& occ, int seed) {
  std::vector<char> in_class(x.edge_count(), 0);
  std::queue<int> q;
  in_class[seed] = 1;
  q.push(seed);
  auto add = [&](int e) {
    if (!in_class[e]) {
      in_class[e] = 1;
      q.push(e);
    }
  };
  while (!q.empty()) {
    const int e = q.front();
    q.pop();
    for (const auto& [p, j] : occ.polygon[e]) {
      const auto& edges = x.polygons()[p].edges;
      add(edges[(j + edges.size() / 2) % edges.size()]);
    }
    for (const auto& [c, i] : occ.cube[e]) {
      const int k = x.cubes()[c].dimension;
      for (int b = 0; b < (1 << k); ++b) {
        if (!(b & (1 << i))) add(x.cube_edge(c, b, i));
      }
    }
  }
  Hypergraph h;
  for (int e = 0; e < x.edge_count(); ++e) {
    if (in_class[e]) h.nodes.push_back(e);
  }
  std::set<std::pair<int, int>> polygon_pieces;
  std::set<std::pair<int, int>> cube_pieces;
  for (int e : h.nodes) {
    for (const auto& [p, j] : occ.polygon[e]) polygon_pieces.emplace(p, j % (x.polygons()[p].edges.size() / 2));
    for (const auto& ci : occ.cube[e]) cube_pieces.insert(ci);
  }
  for (const auto& [p, j] : polygon_pieces) {
    const auto& edges = x.polygons()[p].edges;
    h.links.push_back(HyperLink{h.node_of(edges[j]), h.node_of(edges[j + edges.size() / 2]),
                                HyperCellKind::PolygonSegment, p, j});
  }
  for (const auto& [c, i] : cube_pieces) {
    const int k = x.cubes()[c].dimension;
    for (int b = 0; b < (1 << k); ++b) {
      if (b & (1 << i)) continue;
      for (int j = 0; j < k; ++j) {
        if (j == i || (b & (1 << j))) continue;
        h.links.push_back(HyperLink{h.node_of(x.cube_edge(c, b, i)), h.node_of(x.cube_edge(c, b | (1 << j), i)),
                                    HyperCellKind::Midcube, c, i});
      }
    }
  }
  std::set<std::pair<HyperCellKind, int>> carrier;
  for (const auto& pj : polygon_pieces) carrier.emplace(HyperCellKind::PolygonSegment, pj.first);
  for (const auto& ci : cube_pieces) carrier.emplace(HyperCellKind::Midcube, ci.first);
  h.carrier.assign(carrier.begin(), carrier.end());
  return h;
}

}  // namespace

Hypergraph trace_hypergraph(const CellComplex& x, int seed) {
  if (seed < 0 || seed >= x.edge_count()) throw InvalidArgument("seed edge out of range");
  return trace(x, occurrences(x), seed);
}

std::vector<Hypergraph> all_hypergraphs(const CellComplex& x) {
  const auto occ = occurrences(x);
  std::vector<char> covered(x.edge_count(), 0);
  std::vector<Hypergraph> out;
  for (int e = 0; e < x.edge_count(); ++e) {
    if (covered[e]) continue;
    out.push_back(trace(x, occ, e));
    for (int f : out.back().nodes) covered[f] = 1;
  }
  return out;
}

namespace {

using Pieces = std::map<std::tuple<HyperCellKind, int, int>, std::set<int>>;

/// Pieces keyed by (kind, cell, position); nullopt when some cell carries two
/// pieces or a segment closes up on a single edge.
std::optional<Pieces> injective_pieces(const Hypergraph& h) {
  Pieces pieces;
  for (const auto& l : h.links) {
    if (l.a == l.b) return std::nullopt;
    auto& members = pieces[{l.kind, l.cell, l.position}];
    members.insert(l.a);
    members.insert(l.b);
  }
  std::set<std::pair<HyperCellKind, int>> cells;
  for (const auto& [key, members] : pieces) {
    if (!cells.emplace(std::get<0>(key), std::get<1>(key)).second) return std::nullopt;
  }
  return pieces;
}

}  // namespace

bool is_embedded(const Hypergraph& h) { return injective_pieces(h).has_value(); }

bool is_embedded_tree(const Hypergraph& h) {
  const auto pieces = injective_pieces(h);
  if (!pieces) return false;
  // The bipartite graph of abstract vertices and pieces is a tree.
  const int n = static_cast<int>(h.nodes.size());
  UnionFind uf(n + static_cast<int>(pieces->size()));
  std::size_t incidences = 0;
  int piece = n;
  for (const auto& [key, members] : *pieces) {
    for (int v : members) {
      if (!uf.unite(v, piece)) return false;
      ++incidences;
    }
    ++piece;
  }
  return incidences + 1 == static_cast<std::size_t>(n) + pieces->size();
}

ComplementComponents complement_components(const CellComplex& x, const Hypergraph& h) {
  if (!is_embedded(h)) throw NotEmbedded("hypergraph is not embedded");
  // Each crossed cell carries a single piece, so its two sides are connected
  // through uncut boundary edges; uncrossed cells have no cut edges at all.
  UnionFind uf(x.vertex_count());
  for (int e = 0; e < x.edge_count(); ++e) {
    if (!h.contains(e)) uf.unite(x.edges()[e].first, x.edges()[e].second);
  }
  ComplementComponents out;
  out.label.assign(x.vertex_count(), -1);
  std::map<int, int> ids;
  for (int v = 0; v < x.vertex_count(); ++v) {
    const auto [it, fresh] = ids.emplace(uf.find(v), static_cast<int>(ids.size()));
    out.label[v] = it->second;
  }
  out.count = static_cast<int>(ids.size());
  return out;
}

Wall make_wall(const CellComplex& x, Hypergraph h) {
  const auto comps = complement_components(x, h);
  if (comps.count != 2) {
    throw WallNotTwoSided("complement has " + std::to_string(comps.count) + " components");
  }
  const int anchor = comps.label[x.edges()[h.nodes.front()].first];
  Wall w;
  w.side.resize(x.vertex_count());
  for (int v = 0; v < x.vertex_count(); ++v) w.side[v] = comps.label[v] == anchor ? 0 : 1;
  w.hypergraph = std::move(h);
  return w;
}

int Wallspace::intersection_pattern(int i, int j) const {
  int mask = 0;
  const auto& a = walls[i].side;
  const auto& b = walls[j].side;
  for (std::size_t v = 0; v < a.size(); ++v) mask |= 1 << (2 * a[v] + b[v]);
  return mask;
}

bool Wallspace::crosses(int i, int j) const { return intersection_pattern(i, j) == 0xF; }

Wallspace wallspace_of(const CellComplex& x) {
  Wallspace ws;
  for (auto& h : all_hypergraphs(x)) {
    try {
      ws.walls.push_back(make_wall(x, std::move(h)));
    } catch (const NotEmbedded&) {
      ++ws.rejected;
    } catch (const WallNotTwoSided&) {
      ++ws.rejected;
    }
  }
  return ws;
}

namespace {

/// Distances in half edges between points of the 1-skeleton, with cached
/// breadth-first searches.
class HalfDistances {
 public:
  explicit HalfDistances(const CellComplex& x) : x_(x) {}

  int operator()(const SkeletonPoint& p, const SkeletonPoint& q) {
    if (p == q) return 0;
    int best = -1;
    for (int a : ends(p)) {
      const auto& dist = from(a);
      for (int b : ends(q)) {
        if (dist[b] >= 0 && (best < 0 || dist[b] < best)) best = dist[b];
      }
    }
    if (best < 0) return -1;
    return 2 * best + (p.is_vertex ? 0 : 1) + (q.is_vertex ? 0 : 1);
  }

 private:
  std::vector<int> ends(const SkeletonPoint& p) const {
    if (p.is_vertex) return {p.id};
    return {x_.edges()[p.id].first, x_.edges()[p.id].second};
  }
  const std::vector<int>& from(int v) {
    auto it = cache_.find(v);
    if (it == cache_.end()) it = cache_.emplace(v, x_.distances_from(v)).first;
    return it->second;
  }

  const CellComplex& x_;
  std::unordered_map<int, std::vector<int>> cache_;
};

/// Collapses midcube links and keeps polygon segments.
ProjectedHypergraph collapse(const Hypergraph& h, const std::vector<SkeletonPoint>& image,
                             const std::vector<int>& polygon_image) {
  UnionFind uf(static_cast<int>(h.nodes.size()));
  for (const auto& l : h.links) {
    if (l.kind == HyperCellKind::Midcube) uf.unite(l.a, l.b);
  }
  ProjectedHypergraph z;
  std::map<int, int> index;
  for (int i = 0; i < static_cast<int>(h.nodes.size()); ++i) {
    const auto [it, fresh] = index.emplace(uf.find(i), static_cast<int>(z.points.size()));
    if (fresh) z.points.push_back(image[i]);
  }
  for (const auto& l : h.links) {
    if (l.kind != HyperCellKind::PolygonSegment) continue;
    z.segments.emplace_back(index.at(uf.find(l.a)), index.at(uf.find(l.b)));
    z.segment_polygon.push_back(polygon_image[l.cell]);
  }
  return z;
}

}  // namespace

ProjectedHypergraph as_projected(const CellComplex& x, const Hypergraph& h) {
  std::vector<SkeletonPoint> image;
  for (int e : h.nodes) image.push_back(SkeletonPoint{false, e});
  std::vector<int> polygons(x.polygons().size());
  std::iota(polygons.begin(), polygons.end(), 0);
  return collapse(h, image, polygons);
}

ProjectedHypergraph project_hypergraph(const MixedComplex& m, const Hypergraph& w) {
  std::vector<SkeletonPoint> image;
  for (int e : w.nodes) {
    if (e < 0 || e >= static_cast<int>(m.edges.size())) throw InvalidArgument("hypergraph does not match the complex");
    const int base = m.edge_projection[e];
    image.push_back(base >= 0 ? SkeletonPoint{false, base} : SkeletonPoint{true, m.vertex_projection[m.edges[e].u]});
  }
  return collapse(w, image, m.polygon_projection);
}

AntipodalityReport antipodality(const CellComplex& base, const ProjectedHypergraph& z) {
  HalfDistances dist(base);
  AntipodalityReport r;
  bool first = true;
  for (std::size_t s = 0; s < z.segments.size(); ++s) {
    const auto [a, b] = z.segments[s];
    const int length = static_cast<int>(base.polygons()[z.segment_polygon[s]].edges.size());
    const int half = dist(z.points[a], z.points[b]);
    if (half < 0) throw InvalidArgument("segment ends lie in different components");
    const double ratio = static_cast<double>(half) / (2.0 * length);
    r.min_ratio = first ? ratio : std::min(r.min_ratio, ratio);
    r.max_ratio = first ? ratio : std::max(r.max_ratio, ratio);
    first = false;
    ++r.segments;
  }
  return r;
}

bool check_epsilon(const AntipodalityReport& r, double epsilon) { return r.min_ratio >= 0.5 - epsilon - 1e-12; }

QiStats qi_stats(const CellComplex& x, const Hypergraph& h, double slack) {
  const double length = x.max_polygon_length();
  if (length <= 0) throw InvalidArgument("complex has no polygons");
  HalfDistances dist(x);
  QiStats q;
  q.slack = slack;
  const int n = static_cast<int>(h.nodes.size());
  for (int i = 0; i < n; ++i) {
    const auto dw = h.distances_from(i);
    for (int j = i + 1; j < n; ++j) {
      if (dw[j] <= 0) continue;
      const int half = dist(SkeletonPoint{false, h.nodes[i]}, SkeletonPoint{false, h.nodes[j]});
      if (half < 0) continue;
      const double dx = half / (2.0 * length);
      q.lambda = std::max(q.lambda, (dx - slack) / dw[j]);
      if (dx + slack > 0) q.lambda = std::max(q.lambda, dw[j] / (dx + slack));
      ++q.pairs;
    }
  }
  return q;
}

SeparationReport separating_wall_count(const Wallspace& ws, const CellComplex& x, int p, int q, double density,
                                       double epsilon) {
  if (p < 0 || q < 0 || p >= x.vertex_count() || q >= x.vertex_count()) throw InvalidArgument("vertex out of range");
  SeparationReport r;
  for (const auto& w : ws.walls) r.count += w.side[p] != w.side[q] ? 1 : 0;
  r.distance = x.distances_from(p)[q];
  const double six_l = 6.0 * x.max_polygon_length();
  r.lower_bound = 0.5 * (1.0 / 6.0 - density - epsilon) * (r.distance - six_l);
  r.vacuous = r.distance <= six_l;
  r.satisfied = r.vacuous || r.count >= r.lower_bound;
  return r;
}

namespace {

/// Hypergraph index per edge of gamma and how often each crosses gamma.
std::pair<std::vector<int>, std::map<int, int>> crossings(const std::vector<Hypergraph>& hs,
                                                          const std::vector<int>& gamma) {
  std::vector<int> owner;
  std::map<int, int> count;
  for (int e : gamma) {
    int found = -1;
    for (int i = 0; i < static_cast<int>(hs.size()) && found < 0; ++i) {
      if (hs[i].contains(e)) found = i;
    }
    owner.push_back(found);
    if (found >= 0) ++count[found];
  }
  return {owner, count};
}

}  // namespace

std::optional<int> single_crossing_search(const std::vector<Hypergraph>& hypergraphs, const std::vector<int>& gamma) {
  const auto [owner, count] = crossings(hypergraphs, gamma);
  for (int i : owner) {
    if (i >= 0 && count.at(i) == 1) return i;
  }
  return std::nullopt;
}

std::vector<bool> single_crossing_windows(const std::vector<Hypergraph>& hypergraphs, const std::vector<int>& gamma,
                                          int window) {
  if (window < 1) throw InvalidArgument("window must be positive");
  const auto [owner, count] = crossings(hypergraphs, gamma);
  const int n = static_cast<int>(gamma.size());
  const int w = std::min(window, n);
  std::vector<bool> out;
  for (int start = 0; start + w <= n; ++start) {
    bool hit = false;
    for (int j = start; j < start + w && !hit; ++j) hit = owner[j] >= 0 && count.at(owner[j]) == 1;
    out.push_back(hit);
  }
  return out;
}

DualCubeComplex dual_cube_complex(const Wallspace& ws, int wall_budget) {
  const int n = static_cast<int>(ws.walls.size());
  if (n > wall_budget || n > 63) {
    throw BudgetExceeded(std::to_string(n) + " walls exceed the budget of " + std::to_string(wall_budget));
  }
  std::vector<std::vector<int>> pattern(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) pattern[i][j] = ws.intersection_pattern(i, j);
  }
  DualCubeComplex c;
  std::uint64_t current = 0;
  auto extend = [&](auto&& self, int i) -> void {
    if (i == n) {
      c.orientations.push_back(current);
      return;
    }
    for (int s = 0; s < 2; ++s) {
      bool ok = (pattern[i][i] >> (3 * s)) & 1;
      for (int j = 0; j < i && ok; ++j) {
        const int sj = static_cast<int>((current >> j) & 1);
        ok = (pattern[i][j] >> (2 * s + sj)) & 1;
      }
      if (!ok) continue;
      if (s) current |= std::uint64_t{1} << i;
      self(self, i + 1);
      current &= ~(std::uint64_t{1} << i);
    }
  };
  extend(extend, 0);
  std::unordered_map<std::uint64_t, int> index;
  for (int v = 0; v < static_cast<int>(c.orientations.size()); ++v) index.emplace(c.orientations[v], v);
  c.f_vector.assign(1, static_cast<std::int64_t>(c.orientations.size()));
  for (int v = 0; v < static_cast<int>(c.orientations.size()); ++v) {
    const std::uint64_t base = c.orientations[v];
    std::vector<std::uint64_t> corners{base};
    std::uint64_t mask = 0;
    auto grow = [&](auto&& self, int from, int size) -> void {
      for (int w = from; w < n; ++w) {
        const std::uint64_t bit = std::uint64_t{1} << w;
        if (base & bit) continue;
        const std::size_t old = corners.size();
        bool ok = true;
        for (std::size_t k = 0; k < old && ok; ++k) ok = index.count(corners[k] | bit) > 0;
        if (!ok) continue;
        for (std::size_t k = 0; k < old; ++k) corners.push_back(corners[k] | bit);
        mask |= bit;
        c.cubes.emplace_back(v, mask);
        if (static_cast<int>(c.f_vector.size()) <= size + 1) c.f_vector.push_back(0);
        ++c.f_vector[size + 1];
        self(self, w + 1, size + 1);
        mask &= ~bit;
        corners.resize(old);
      }
    };
    grow(grow, 0, 0);
  }
  c.dimension = static_cast<int>(c.f_vector.size()) - 1;
  return c;
}

CubeComplexData DualCubeComplex::as_data() const {
  std::unordered_map<std::uint64_t, int> index;
  for (int v = 0; v < static_cast<int>(orientations.size()); ++v) index.emplace(orientations[v], v);
  CubeComplexData d;
  d.vertex_count = static_cast<int>(orientations.size());
  for (const auto& [v, mask] : cubes) {
    std::vector<std::uint64_t> bits;
    for (int w = 0; w < 64; ++w) {
      if (mask & (std::uint64_t{1} << w)) bits.push_back(std::uint64_t{1} << w);
    }
    std::vector<int> corners;
    for (std::size_t b = 0; b < (std::size_t{1} << bits.size()); ++b) {
      std::uint64_t o = orientations[v];
      for (std::size_t i = 0; i < bits.size(); ++i) {
        if (b & (std::size_t{1} << i)) o |= bits[i];
      }
      corners.push_back(index.at(o));
    }
    d.cubes.push_back(std::move(corners));
  }
  return d;
}

bool link_flag_check(const CubeComplexData& c) {
  std::map<std::pair<int, int>, int> edge_id;
  for (int i = 0; i < static_cast<int>(c.cubes.size()); ++i) {
    if (c.cubes[i].size() == 2) edge_id.emplace(std::minmax(c.cubes[i][0], c.cubes[i][1]), i);
  }
  // Link simplices per vertex, as sorted edge id sets.
  std::vector<std::vector<std::vector<int>>> simplices(c.vertex_count);
  for (const auto& cube : c.cubes) {
    int k = 0;
    while ((std::size_t{1} << k) < cube.size()) ++k;
    if (k < 2) continue;
    for (std::size_t b = 0; b < cube.size(); ++b) {
      std::vector<int> s;
      for (int i = 0; i < k; ++i) {
        const auto it = edge_id.find(std::minmax(cube[b], cube[b ^ (std::size_t{1} << i)]));
        if (it == edge_id.end()) throw InvalidArgument("cube edge missing from the complex");
        s.push_back(it->second);
      }
      std::sort(s.begin(), s.end());
      simplices[cube[b]].push_back(std::move(s));
    }
  }
  for (int v = 0; v < c.vertex_count; ++v) {
    std::map<int, std::set<int>> adjacent;
    for (const auto& s : simplices[v]) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          adjacent[s[i]].insert(s[j]);
          adjacent[s[j]].insert(s[i]);
        }
      }
    }
    auto spanned = [&](const std::vector<int>& clique) {
      for (const auto& s : simplices[v]) {
        if (std::includes(s.begin(), s.end(), clique.begin(), clique.end())) return true;
      }
      return false;
    };
    // Cliques of size >= 3 grow only from spanned cliques: a clique that is
    // not spanned already violates the flag condition.
    std::vector<int> clique;
    bool flag = true;
    auto grow = [&](auto&& self, const std::set<int>& candidates) -> void {
      for (int w : candidates) {
        if (!flag) return;
        if (!clique.empty() && w < clique.back()) continue;
        clique.push_back(w);
        if (clique.size() >= 3 && !spanned(clique)) {
          flag = false;
          return;
        }
        std::set<int> next;
        for (int u : candidates) {
          if (u > w && adjacent[w].count(u)) next.insert(u);
        }
        self(self, next);
        clique.pop_back();
      }
    };
    std::set<int> all;
    for (const auto& [e, nbrs] : adjacent) all.insert(e);
    grow(grow, all);
    if (!flag) return false;
  }
  return true;
}

TwoSidedReport two_sided_projection_check(const MixedComplex& m, const Hypergraph& w) {
  const auto x = CellComplex::from(m);
  const auto wall = make_wall(x, w);
  std::set<int> projected;
  for (int e : w.nodes) {
    if (m.edge_projection[e] < 0) projected.insert(m.vertex_projection[m.edges[e].u]);
  }
  std::map<int, int> seen;
  for (int v = 0; v < x.vertex_count(); ++v) seen[m.vertex_projection[v]] |= 1 << wall.side[v];
  TwoSidedReport r;
  r.projected_vertices.assign(projected.begin(), projected.end());
  for (const auto& [v, mask] : seen) {
    if (mask == 3) r.shared_vertices.push_back(v);
  }
  r.passed = r.projected_vertices == r.shared_vertices;
  return r;
}

std::string write_wallspace(const Wallspace& ws) {
  std::ostringstream os;
  os << "fpd-wallspace 1\nWALLS " << ws.walls.size() << " REJECTED " << ws.rejected << "\n";
  for (std::size_t i = 0; i < ws.walls.size(); ++i) {
    os << i << " :";
    for (int e : ws.walls[i].hypergraph.nodes) os << ' ' << e;
    os << " | ";
    for (auto s : ws.walls[i].side) os << static_cast<int>(s);
    os << '\n';
  }
  os << "END\n";
  return os.str();
}

std::string write_dual(const DualCubeComplex& c) {
  std::ostringstream os;
  os << "fpd-dual 1\nDIMENSION " << c.dimension << "\nFVECTOR";
  for (auto f : c.f_vector) os << ' ' << f;
  os << "\nVERTICES " << c.orientations.size() << '\n';
  for (std::size_t v = 0; v < c.orientations.size(); ++v) os << v << ' ' << c.orientations[v] << '\n';
  os << "CUBES " << c.cubes.size() << '\n';
  for (const auto& [v, mask] : c.cubes) os << v << ' ' << mask << '\n';
  os << "END\n";
  return os.str();
}

}  // namespace fpd
