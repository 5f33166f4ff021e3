#include "fpd/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

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
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

int other_end(const DiagramEdge& e, int v) { return e.factor_end == v ? e.central_end : e.factor_end; }

}  // namespace

AbstractDiagram::AbstractDiagram(int half_length, std::vector<VertexKind> kinds, std::vector<DiagramEdge> edges,
                                 std::vector<Face> faces)
    : half_length_(half_length), kinds_(std::move(kinds)), edges_(std::move(edges)), faces_(std::move(faces)) {
  if (half_length_ < 1) throw InvalidArgument("faces must be 2l-gons with l >= 1");
  const int nv = vertex_count();
  for (const auto& e : edges_) {
    if (e.factor_end < 0 || e.factor_end >= nv || e.central_end < 0 || e.central_end >= nv)
      throw InvalidArgument("edge endpoint out of range");
    if (kinds_[e.factor_end] != VertexKind::Factor || kinds_[e.central_end] != VertexKind::Central)
      throw InvalidArgument("edge does not join a factor vertex to a central vertex");
  }
  std::vector<char> used(edges_.size(), 0);
  const int len = 2 * half_length_;
  for (const auto& f : faces_) {
    if (static_cast<int>(f.edges.size()) != len) throw InvalidArgument("face is not a 2l-gon");
    if (f.orientation != 1 && f.orientation != -1) throw InvalidArgument("orientation must be +1 or -1");
    for (int i = 0; i < len; ++i) {
      const int e = f.edges[i];
      if (e < 0 || e >= edge_count()) throw InvalidArgument("face edge out of range");
      used[e] = 1;
      const int next = f.edges[(i + 1) % len];
      const bool ok = (i % 2 == 0) ? edges_[e].central_end == edges_[next].central_end
                                   : edges_[e].factor_end == edges_[next].factor_end;
      if (!ok) throw InvalidArgument("face boundary is not a closed alternating path");
    }
  }
  for (char u : used)
    if (!u) throw InvalidArgument("every edge must lie on a face");
}

AbstractDiagram AbstractDiagram::from_side_labels(int half_length, const std::vector<std::vector<int>>& side_edge) {
  const int len = 2 * half_length;
  const int polys = static_cast<int>(side_edge.size());
  UnionFind uf(polys * len);
  std::map<int, std::pair<int, int>> first_ends;  // label -> (factor, central) local vertex ids
  auto ends = [&](int p, int s) {
    const int a = p * len + s, b = p * len + (s + 1) % len;
    return s % 2 == 0 ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  for (int p = 0; p < polys; ++p) {
    if (static_cast<int>(side_edge[p].size()) != len) throw InvalidArgument("polygon side count is not 2l");
    for (int s = 0; s < len; ++s) {
      const auto fc = ends(p, s);
      auto [it, inserted] = first_ends.emplace(side_edge[p][s], fc);
      if (!inserted) {
        uf.unite(it->second.first, fc.first);
        uf.unite(it->second.second, fc.second);
      }
    }
  }
  std::map<int, int> vid;
  std::vector<VertexKind> kinds;
  for (int x = 0; x < polys * len; ++x) {
    const int r = uf.find(x);
    if (vid.emplace(r, static_cast<int>(kinds.size())).second)
      kinds.push_back((x % len) % 2 == 0 ? VertexKind::Factor : VertexKind::Central);
  }
  std::map<int, int> eid;
  std::vector<DiagramEdge> edges;
  std::vector<Face> faces;
  for (int p = 0; p < polys; ++p) {
    Face f;
    f.cls = p;
    for (int s = 0; s < len; ++s) {
      auto [it, inserted] = eid.emplace(side_edge[p][s], static_cast<int>(edges.size()));
      if (inserted) {
        const auto fc = ends(p, s);
        edges.push_back(DiagramEdge{vid.at(uf.find(fc.first)), vid.at(uf.find(fc.second))});
      }
      f.edges.push_back(it->second);
    }
    faces.push_back(std::move(f));
  }
  return AbstractDiagram(half_length, std::move(kinds), std::move(edges), std::move(faces));
}

int AbstractDiagram::class_count() const {
  std::set<int> c;
  for (const auto& f : faces_) c.insert(f.cls);
  return static_cast<int>(c.size());
}

int AbstractDiagram::face_vertex(int f, int i) const {
  const int len = 2 * half_length_;
  i = ((i % len) + len) % len;
  const DiagramEdge& e = edges_[faces_[f].edges[i]];
  return i % 2 == 0 ? e.factor_end : e.central_end;
}

std::vector<int> AbstractDiagram::reading_edges(int f) const {
  const Face& face = faces_[f];
  if (face.orientation == 1) return face.edges;
  return std::vector<int>(face.edges.rbegin(), face.edges.rend());
}

std::vector<Corner> AbstractDiagram::all_corners() const {
  std::vector<Corner> out;
  const int len = 2 * half_length_;
  for (int f = 0; f < area(); ++f) {
    const auto read = reading_edges(f);
    for (int i = 0; i < len; ++i) {
      const int v = face_vertex(f, faces_[f].orientation == 1 ? i : -i);
      out.push_back(Corner{f, i, v, read[(i + len - 1) % len], read[i]});
    }
  }
  return out;
}

std::vector<Corner> AbstractDiagram::factor_corners(int f) const {
  const int len = 2 * half_length_;
  const auto read = reading_edges(f);
  std::vector<Corner> out;
  for (int k = 0; k < half_length_; ++k) {
    const int in = read[(2 * k + len - 1) % len], out_e = read[2 * k];
    out.push_back(Corner{f, k, edges_[out_e].factor_end, in, out_e});
  }
  return out;
}

std::vector<int> AbstractDiagram::edge_degrees() const {
  std::vector<int> deg(edges_.size(), 0);
  for (const auto& f : faces_)
    for (int e : f.edges) ++deg[e];
  return deg;
}

std::vector<int> AbstractDiagram::vertex_degrees() const {
  std::vector<int> deg(kinds_.size(), 0);
  for (const auto& e : edges_) ++deg[e.factor_end], ++deg[e.central_end];
  return deg;
}

int AbstractDiagram::boundary_length() const {
  const auto deg = edge_degrees();
  return static_cast<int>(std::count(deg.begin(), deg.end(), 1));
}

bool AbstractDiagram::has_backtracking() const {
  const int len = 2 * half_length_;
  for (const auto& f : faces_)
    for (int i = 0; i < len; ++i)
      if (f.edges[i] == f.edges[(i + 1) % len]) return true;
  return false;
}

bool AbstractDiagram::is_connected() const {
  if (kinds_.empty()) return true;
  UnionFind uf(vertex_count());
  int comps = vertex_count();
  for (const auto& e : edges_)
    if (uf.unite(e.factor_end, e.central_end)) --comps;
  return comps == 1;
}

bool AbstractDiagram::is_disc() const {
  if (area() == 0 || !is_connected() || euler_characteristic() != 1) return false;
  const auto deg = edge_degrees();
  bool boundary = false;
  for (int d : deg) {
    if (d > 2) return false;
    if (d == 1) boundary = true;
  }
  if (!boundary) return false;
  // Vertex links must be connected (each a single path or cycle).
  std::vector<std::vector<std::pair<int, int>>> link(kinds_.size());
  for (const auto& c : all_corners()) link[c.vertex].emplace_back(c.in_edge, c.out_edge);
  std::vector<std::vector<int>> incident(kinds_.size());
  for (int e = 0; e < edge_count(); ++e) {
    incident[edges_[e].factor_end].push_back(e);
    incident[edges_[e].central_end].push_back(e);
  }
  for (int v = 0; v < vertex_count(); ++v) {
    std::map<int, int> idx;
    for (int e : incident[v]) idx.emplace(e, static_cast<int>(idx.size()));
    UnionFind uf(static_cast<int>(idx.size()));
    int comps = static_cast<int>(idx.size());
    for (auto [a, b] : link[v])
      if (uf.unite(idx.at(a), idx.at(b))) --comps;
    if (comps != 1) return false;
  }
  return true;
}

AbstractDiagram AbstractDiagram::with_faces(std::vector<Face> faces) const {
  return AbstractDiagram(half_length_, kinds_, edges_, std::move(faces));
}

AbstractDiagram AbstractDiagram::subdiagram(const std::vector<int>& face_ids) const {
  std::map<int, int> vmap, emap;
  std::vector<VertexKind> kinds;
  std::vector<DiagramEdge> edges;
  std::vector<Face> faces;
  auto vertex = [&](int v) {
    auto [it, inserted] = vmap.emplace(v, static_cast<int>(kinds.size()));
    if (inserted) kinds.push_back(kinds_[v]);
    return it->second;
  };
  for (int f : face_ids) {
    Face nf = faces_.at(f);
    for (int& e : nf.edges) {
      auto [it, inserted] = emap.emplace(e, static_cast<int>(edges.size()));
      if (inserted) edges.push_back(DiagramEdge{vertex(edges_[e].factor_end), vertex(edges_[e].central_end)});
      e = it->second;
    }
    faces.push_back(std::move(nf));
  }
  return AbstractDiagram(half_length_, std::move(kinds), std::move(edges), std::move(faces));
}

std::int64_t cancellation(const AbstractDiagram& d) {
  std::int64_t total = 0;
  for (int deg : d.edge_degrees()) total += deg - 1;
  return total;
}

namespace {

// Factor corners grouped by vertex, as unordered edge pairs.
std::map<int, std::vector<std::pair<int, int>>> corners_by_vertex(const AbstractDiagram& d) {
  std::map<int, std::vector<std::pair<int, int>>> out;
  for (int f = 0; f < d.area(); ++f)
    for (const auto& c : d.factor_corners(f))
      out[c.vertex].emplace_back(std::min(c.in_edge, c.out_edge), std::max(c.in_edge, c.out_edge));
  return out;
}

int relative_degree_at(const std::vector<std::pair<int, int>>& corners, int a, int b) {
  if (a > b) std::swap(a, b);
  int full = 0;
  bool partial = false;
  for (auto [x, y] : corners) {
    if (x == a && y == b) {
      ++full;
    } else if (x == a || x == b || y == a || y == b) {
      partial = true;
    }
  }
  return full + (partial ? 1 : 0);
}

}  // namespace

int relative_degree(const AbstractDiagram& d, int e1, int v, int e2) {
  const auto by_vertex = corners_by_vertex(d);
  auto it = by_vertex.find(v);
  if (it == by_vertex.end()) return 0;
  return relative_degree_at(it->second, e1, e2);
}

std::int64_t relative_cancellation_x2(const AbstractDiagram& d) {
  std::int64_t total = 0;
  for (const auto& [v, corners] : corners_by_vertex(d)) {
    const std::set<std::pair<int, int>> pairs(corners.begin(), corners.end());
    // Each unordered pair stands for two ordered triples with equal degree.
    for (auto [a, b] : pairs) total += 2 * (relative_degree_at(corners, a, b) - 1);
  }
  return total;
}

std::vector<Connector> connectors(const AbstractDiagram& d) {
  const auto deg = d.vertex_degrees();
  std::vector<std::vector<int>> incident(d.vertex_count());
  for (int e = 0; e < d.edge_count(); ++e) {
    incident[d.edge(e).factor_end].push_back(e);
    incident[d.edge(e).central_end].push_back(e);
  }
  std::vector<char> used(d.edge_count(), 0);
  std::vector<Connector> out;
  auto walk = [&](int start, int first_edge) {
    Connector c;
    c.start = start;
    int v = start, e = first_edge;
    for (;;) {
      used[e] = 1;
      c.edges.push_back(e);
      v = other_end(d.edge(e), v);
      if (deg[v] != 2 || v == start) break;
      const int next = incident[v][0] == e ? incident[v][1] : incident[v][0];
      if (used[next]) break;
      e = next;
    }
    c.end = v;
    c.cycle = c.start == c.end;
    out.push_back(std::move(c));
  };
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (deg[v] == 2) continue;
    for (int e : incident[v])
      if (!used[e]) walk(v, e);
  }
  for (int e = 0; e < d.edge_count(); ++e) {
    if (used[e]) continue;
    // A cycle of degree-2 vertices; start at its smallest vertex.
    int best = d.edge(e).factor_end, v = best, cur = e;
    do {
      v = other_end(d.edge(cur), v);
      best = std::min(best, v);
      cur = incident[v][0] == cur ? incident[v][1] : incident[v][0];
    } while (cur != e);
    walk(best, incident[best][0]);
  }
  return out;
}

bool is_km_bounded(const AbstractDiagram& d, int k, int m) {
  return d.area() <= k && static_cast<int>(connectors(d).size()) <= m;
}

std::vector<std::pair<int, int>> reduction_pairs(const AbstractDiagram& d, const std::vector<int>* face_relator) {
  std::vector<std::pair<int, int>> out;
  std::vector<std::vector<int>> reads;
  for (int f = 0; f < d.area(); ++f) reads.push_back(d.reading_edges(f));
  const int len = 2 * d.half_length();
  for (int f = 0; f < d.area(); ++f) {
    for (int g = f + 1; g < d.area(); ++g) {
      const bool same = face_relator ? (*face_relator)[f] == (*face_relator)[g] : d.face(f).cls == d.face(g).cls;
      if (!same) continue;
      for (int i = 0; i < len; ++i) {
        if (reads[f][i] == reads[g][i]) {
          out.emplace_back(f, g);
          break;
        }
      }
    }
  }
  return out;
}

namespace {

int longest_cyclic_run(const Relator& a, const Relator& b, int shift) {
  const int n = static_cast<int>(a.size());
  int first_miss = -1;
  for (int i = 0; i < n && first_miss < 0; ++i)
    if (a[i] != b[(i + shift) % n]) first_miss = i;
  if (first_miss < 0) return n;
  int best = 0, run = 0;
  for (int t = 1; t <= n; ++t) {
    const int i = (first_miss + t) % n;
    run = a[i] == b[(i + shift) % n] ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

}  // namespace

int max_piece(const Relator& r1, const Relator& r2, const Alphabet& alphabet, bool same_relator) {
  if (r1.size() != r2.size() || r1.empty()) throw InvalidArgument("relators must have equal positive length");
  const int n = static_cast<int>(r1.size());
  Relator inv(r2.rbegin(), r2.rend());
  for (int& x : inv) x = alphabet.inverse(x);
  int best = 0;
  for (int s = 0; s < n; ++s) {
    if (!(same_relator && s == 0)) best = std::max(best, longest_cyclic_run(r1, r2, s));
    best = std::max(best, longest_cyclic_run(r1, inv, s));
  }
  return best;
}

PieceStats piece_stats(const std::vector<Relator>& relators, const Alphabet& alphabet) {
  PieceStats st;
  const std::set<Relator> uniq(relators.begin(), relators.end());
  const std::vector<Relator> rs(uniq.begin(), uniq.end());
  if (rs.empty()) return st;
  st.length = static_cast<int>(rs.front().size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    st.max_piece = std::max(st.max_piece, max_piece(rs[i], rs[i], alphabet, true));
    for (std::size_t j = i + 1; j < rs.size(); ++j)
      st.max_piece = std::max(st.max_piece, max_piece(rs[i], rs[j], alphabet, false));
  }
  st.lambda = static_cast<double>(st.max_piece) / st.length;
  st.c_prime_sixth = 6 * st.max_piece < st.length;
  return st;
}

GreendlingerResult greendlinger_check(const AbstractDiagram& d, double density) {
  if (d.area() < 2) throw InvalidArgument("the Greendlinger check needs at least two faces");
  GreendlingerResult res;
  const int big_l = 2 * d.half_length();
  const double need = big_l * (1.0 - 2.5 * density);
  const auto deg = d.edge_degrees();
  for (int f = 0; f < d.area(); ++f) {
    int ext = 0;
    for (int e : d.face(f).edges) ext += deg[e] <= 1 ? 1 : 0;
    res.external_edges.push_back(ext);
    if (ext >= need - 1e-9) res.witness_faces.push_back(f);
  }
  res.conclusion = res.witness_faces.size() >= 2;

  const int n = d.area();
  const int max_size = std::min(n, 6);
  res.hypothesis_exhaustive = n <= 6;
  res.hypothesis = true;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int next) -> void {
    if (!res.hypothesis) return;
    if (!pick.empty()) {
      const auto sub = d.subdiagram(pick);
      if (static_cast<double>(cancellation(sub)) >= density * big_l * sub.area()) res.hypothesis = false;
    }
    if (static_cast<int>(pick.size()) == max_size) return;
    for (int f = next; f < n; ++f) {
      pick.push_back(f);
      self(self, f + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return res;
}

AbstractDiagram glue_two_faces(int half_length, int k1, int k2, int run, bool same_direction, bool extend_before,
                               bool extend_after) {
  const int len = 2 * half_length;
  const int glued = 2 * run + (extend_before ? 1 : 0) + (extend_after ? 1 : 0);
  if (run < 0 || glued > len) throw InvalidArgument("glued path longer than a face boundary");
  std::vector<std::vector<int>> sides(2, std::vector<int>(len));
  for (int s = 0; s < len; ++s) sides[0][s] = s, sides[1][s] = len + s;
  auto mod = [len](int x) { return ((x % len) + len) % len; };
  auto glue = [&](int i) {
    const int a = mod(2 * k1 - 1 + i);
    const int b = same_direction ? mod(2 * k2 - 1 + i) : mod(2 * k2 - i);
    sides[1][b] = sides[0][a];
  };
  for (int i = 0; i < 2 * run; ++i) glue(i);
  if (extend_before) glue(-1);
  if (extend_after) glue(2 * run);
  return AbstractDiagram::from_side_labels(half_length, sides);
}

}  // namespace fpd
