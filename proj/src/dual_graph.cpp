#include "fpd/dual_graph.hpp"

#include <algorithm>
#include <array>
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

// One way to read a face: start vertex position and direction in the stored
// cycle. Geometric forms try every factor start and both directions.
struct Reading {
  int face;
  int start;
  int dir;
};

std::vector<int> face_sequence(const AbstractDiagram& d, const Reading& r) {
  const int len = 2 * d.half_length();
  const auto& e = d.face(r.face).edges;
  std::vector<int> seq(len);
  for (int t = 0; t < len; ++t)
    seq[t] = r.dir == 1 ? e[(r.start + t) % len] : e[((r.start - 1 - t) % len + len) % len];
  return seq;
}

struct CanonState {
  std::map<int, int> edge_label;
  std::map<int, int> class_label;
  std::vector<Reading> order;
};

class Canonizer {
 public:
  Canonizer(const AbstractDiagram& d, bool labelled) : d_(d), labelled_(labelled) {}

  std::vector<int> run() {
    CanonState st;
    std::vector<char> used(d_.area(), 0);
    best_.clear();
    search(st, used, {});
    return best_;
  }

  const CanonState& best_state() const { return best_state_; }

 private:
  std::vector<Reading> options(int f) const {
    std::vector<Reading> out;
    if (labelled_) {
      out.push_back(Reading{f, 0, d_.face(f).orientation});
      return out;
    }
    for (int s = 0; s < 2 * d_.half_length(); s += 2)
      for (int dir : {1, -1}) out.push_back(Reading{f, s, dir});
    return out;
  }

  std::vector<int> block(const CanonState& st, const Reading& r) const {
    std::vector<int> out;
    if (labelled_) {
      const int c = d_.face(r.face).cls;
      auto it = st.class_label.find(c);
      out.push_back(it == st.class_label.end() ? static_cast<int>(st.class_label.size()) : it->second);
    }
    std::map<int, int> fresh;
    int next = static_cast<int>(st.edge_label.size());
    for (int e : face_sequence(d_, r)) {
      auto it = st.edge_label.find(e);
      if (it != st.edge_label.end()) {
        out.push_back(it->second);
        continue;
      }
      auto [f, inserted] = fresh.emplace(e, next);
      if (inserted) ++next;
      out.push_back(f->second);
    }
    return out;
  }

  void apply(CanonState& st, const Reading& r) const {
    if (labelled_) st.class_label.emplace(d_.face(r.face).cls, static_cast<int>(st.class_label.size()));
    for (int e : face_sequence(d_, r)) st.edge_label.emplace(e, static_cast<int>(st.edge_label.size()));
    st.order.push_back(r);
  }

  // Vertex incidences under the final edge labels, so that identifications
  // not implied by the face sequences are still captured.
  std::vector<int> vertex_part(const CanonState& st) const {
    std::vector<int> by_label(st.edge_label.size());
    for (auto [e, l] : st.edge_label) by_label[l] = e;
    std::map<int, int> vlabel;
    std::vector<int> out;
    for (int e : by_label) {
      for (int v : {d_.edge(e).factor_end, d_.edge(e).central_end}) {
        auto [it, inserted] = vlabel.emplace(v, static_cast<int>(vlabel.size()));
        out.push_back(it->second);
      }
    }
    return out;
  }

  void search(CanonState& st, std::vector<char>& used, std::vector<int> prefix) {
    if (static_cast<int>(st.order.size()) == d_.area()) {
      std::vector<int> code = {d_.area(), d_.half_length(), static_cast<int>(st.edge_label.size())};
      code.insert(code.end(), prefix.begin(), prefix.end());
      const auto vp = vertex_part(st);
      code.insert(code.end(), vp.begin(), vp.end());
      if (best_.empty() || code < best_) {
        best_ = std::move(code);
        best_state_ = st;
      }
      return;
    }
    std::vector<int> min_block;
    std::vector<Reading> ties;
    for (int f = 0; f < d_.area(); ++f) {
      if (used[f]) continue;
      for (const auto& r : options(f)) {
        auto b = block(st, r);
        if (min_block.empty() || b < min_block) {
          min_block = std::move(b);
          ties.assign(1, r);
        } else if (b == min_block) {
          ties.push_back(r);
        }
      }
    }
    prefix.insert(prefix.end(), min_block.begin(), min_block.end());
    for (const auto& r : ties) {
      CanonState next = st;
      apply(next, r);
      used[r.face] = 1;
      search(next, used, prefix);
      used[r.face] = 0;
    }
  }

  const AbstractDiagram& d_;
  bool labelled_;
  std::vector<int> best_;
  CanonState best_state_;
};

}  // namespace

std::vector<int> geometric_canonical_form(const AbstractDiagram& d) { return Canonizer(d, false).run(); }

std::vector<int> labelled_canonical_form(const AbstractDiagram& d) { return Canonizer(d, true).run(); }

AbstractDiagram canonicalize(const AbstractDiagram& d, std::vector<int>* face_order) {
  Canonizer c(d, true);
  c.run();
  const CanonState& st = c.best_state();
  if (face_order) {
    face_order->clear();
    for (const auto& r : st.order) face_order->push_back(r.face);
  }
  std::vector<int> by_label(st.edge_label.size());
  for (auto [e, l] : st.edge_label) by_label[l] = e;
  std::map<int, int> vlabel;
  std::vector<VertexKind> kinds;
  std::vector<DiagramEdge> edges;
  for (int e : by_label) {
    int ends[2];
    int i = 0;
    for (int v : {d.edge(e).factor_end, d.edge(e).central_end}) {
      auto [it, inserted] = vlabel.emplace(v, static_cast<int>(kinds.size()));
      if (inserted) kinds.push_back(d.kind(v));
      ends[i++] = it->second;
    }
    edges.push_back(DiagramEdge{ends[0], ends[1]});
  }
  std::vector<Face> faces;
  for (const auto& r : st.order) {
    Face f;
    for (int e : face_sequence(d, r)) f.edges.push_back(st.edge_label.at(e));
    f.orientation = 1;
    f.cls = st.class_label.at(d.face(r.face).cls);
    faces.push_back(std::move(f));
  }
  return AbstractDiagram(d.half_length(), std::move(kinds), std::move(edges), std::move(faces));
}

std::vector<std::vector<int>> WeightedDecoratedDualGraph::undecorated() const {
  std::vector<std::vector<int>> out;
  for (const auto& f : faces) {
    std::vector<int> row(connectors.size(), 0);
    for (const auto& t : f.traversals) ++row[t.connector];
    out.push_back(std::move(row));
  }
  return out;
}

WeightedDecoratedDualGraph encode_dual(const AbstractDiagram& d) {
  if (d.has_backtracking()) throw InvalidArgument("cannot encode a diagram with backtracking faces");
  const auto cons = connectors(d);
  WeightedDecoratedDualGraph g;
  g.half_length = d.half_length();
  std::vector<int> edge_connector(d.edge_count(), -1);
  for (int j = 0; j < static_cast<int>(cons.size()); ++j) {
    g.connectors.push_back(DualConnector{static_cast<int>(cons[j].edges.size()),
                                         d.kind(cons[j].start) == VertexKind::Factor});
    for (int e : cons[j].edges) edge_connector[e] = j;
  }
  const int len = 2 * d.half_length();
  for (int f = 0; f < d.area(); ++f) {
    const auto& edges = d.face(f).edges;
    auto starts_here = [&](int i, int& sign) {
      const Connector& c = cons[edge_connector[edges[i]]];
      const int v = d.face_vertex(f, i);
      if (edges[i] == c.edges.front() && v == c.start) {
        sign = 1;
        return true;
      }
      if (edges[i] == c.edges.back() && v == c.end) {
        sign = -1;
        return true;
      }
      return false;
    };
    int i0 = -1, sign = 1;
    for (int i = 0; i < len && i0 < 0; ++i)
      if (starts_here(i, sign)) i0 = i;
    if (i0 < 0) throw InvalidArgument("face boundary does not split into connector traversals");
    DualFace df;
    df.offset = (len - i0) % len;
    df.orientation = d.face(f).orientation;
    df.cls = d.face(f).cls;
    int pos = 0;
    while (pos < len) {
      const int i = (i0 + pos) % len;
      if (!starts_here(i, sign)) throw InvalidArgument("face leaves a connector in its interior");
      const int j = edge_connector[edges[i]];
      const Connector& c = cons[j];
      const int w = static_cast<int>(c.edges.size());
      for (int t = 0; t < w; ++t) {
        const int expect = sign == 1 ? c.edges[t] : c.edges[w - 1 - t];
        if (edges[(i + t) % len] != expect) throw InvalidArgument("face leaves a connector in its interior");
      }
      df.traversals.push_back(DualTraversal{j, sign});
      pos += w;
    }
    g.faces.push_back(std::move(df));
  }
  if (decode_dual(g).vertex_count() != d.vertex_count())
    throw InvalidArgument("diagram has vertex identifications not carried by its faces");
  return g;
}

AbstractDiagram decode_dual(const WeightedDecoratedDualGraph& g) {
  const int len = 2 * g.half_length;
  const int nc = static_cast<int>(g.connectors.size());
  std::vector<int> base(nc + 1, 0);
  for (int j = 0; j < nc; ++j) {
    if (g.connectors[j].weight < 1 || g.connectors[j].weight > len)
      throw InvalidArgument("connector weight out of range");
    base[j + 1] = base[j] + g.connectors[j].weight + 1;
  }
  std::vector<char> used(nc, 0);
  UnionFind uf(base[nc]);
  for (const auto& f : g.faces) {
    int total = 0;
    for (const auto& t : f.traversals) {
      if (t.connector < 0 || t.connector >= nc || (t.sign != 1 && t.sign != -1))
        throw InvalidArgument("bad traversal");
      used[t.connector] = 1;
      total += g.connectors[t.connector].weight;
    }
    if (total != len || f.traversals.empty()) throw InvalidArgument("face traversal weights do not sum to 2l");
    const int n = static_cast<int>(f.traversals.size());
    for (int i = 0; i < n; ++i) {
      const auto& a = f.traversals[i];
      const auto& b = f.traversals[(i + 1) % n];
      const int exit_a = base[a.connector] + (a.sign == 1 ? g.connectors[a.connector].weight : 0);
      const int entry_b = base[b.connector] + (b.sign == 1 ? 0 : g.connectors[b.connector].weight);
      uf.unite(exit_a, entry_b);
    }
  }
  for (char u : used)
    if (!u) throw InvalidArgument("connector not traversed by any face");
  std::map<int, int> vid;
  std::vector<VertexKind> kinds;
  std::map<int, bool> root_factor;
  for (int j = 0; j < nc; ++j) {
    for (int t = 0; t <= g.connectors[j].weight; ++t) {
      const bool factor = g.connectors[j].starts_at_factor == (t % 2 == 0);
      const int r = uf.find(base[j] + t);
      auto [it, inserted] = root_factor.emplace(r, factor);
      if (!inserted && it->second != factor) throw InvalidArgument("dual graph is not bipartite-consistent");
      if (vid.emplace(r, static_cast<int>(kinds.size())).second)
        kinds.push_back(factor ? VertexKind::Factor : VertexKind::Central);
    }
  }
  std::vector<DiagramEdge> edges;
  std::vector<int> edge_base(nc);
  for (int j = 0; j < nc; ++j) {
    edge_base[j] = static_cast<int>(edges.size());
    for (int t = 0; t < g.connectors[j].weight; ++t) {
      const int a = vid.at(uf.find(base[j] + t)), b = vid.at(uf.find(base[j] + t + 1));
      edges.push_back(kinds[a] == VertexKind::Factor ? DiagramEdge{a, b} : DiagramEdge{b, a});
    }
  }
  std::vector<Face> faces;
  for (const auto& f : g.faces) {
    std::vector<int> seq;
    for (const auto& t : f.traversals) {
      const int w = g.connectors[t.connector].weight;
      for (int s = 0; s < w; ++s) seq.push_back(edge_base[t.connector] + (t.sign == 1 ? s : w - 1 - s));
    }
    Face face;
    face.orientation = f.orientation;
    face.cls = f.cls;
    for (int i = 0; i < len; ++i) face.edges.push_back(seq[(f.offset + i) % len]);
    faces.push_back(std::move(face));
  }
  return AbstractDiagram(g.half_length, std::move(kinds), std::move(edges), std::move(faces));
}

namespace {

// A connector multigraph: vertices are the branch points, edges the
// connectors (u -> v in their positive direction).
struct JunctionGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

// Connected multigraphs with `c` edges in which every vertex has degree >= 3,
// plus the single loop. Edge lists are sorted, so some isomorphic copies
// repeat; the canonical forms remove them later.
std::vector<JunctionGraph> junction_graphs(int c) {
  std::vector<JunctionGraph> out;
  if (c == 1) out.push_back(JunctionGraph{1, {{0, 0}}});
  for (int nv = 1; 3 * nv <= 2 * c; ++nv) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < nv; ++u)
      for (int v = u; v < nv; ++v) pairs.emplace_back(u, v);
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
      if (static_cast<int>(pick.size()) == c) {
        JunctionGraph g{nv, {}};
        std::vector<int> deg(nv, 0);
        std::vector<int> parent(nv);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
          while (parent[x] != x) x = parent[x];
          return x;
        };
        for (int p : pick) {
          g.edges.push_back(pairs[p]);
          ++deg[pairs[p].first], ++deg[pairs[p].second];
          parent[find(pairs[p].first)] = find(pairs[p].second);
        }
        for (int v = 0; v < nv; ++v)
          if (deg[v] < 3 || find(v) != find(0)) return;
        out.push_back(std::move(g));
        return;
      }
      for (int p = from; p < static_cast<int>(pairs.size()); ++p) {
        pick.push_back(p);
        self(self, p);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  }
  return out;
}

using Walk = std::vector<DualTraversal>;

Walk canonical_walk(const Walk& w) {
  Walk best;
  const int n = static_cast<int>(w.size());
  Walk rev(w.rbegin(), w.rend());
  for (auto& t : rev) t.sign = -t.sign;
  auto key = [](const Walk& x) {
    std::vector<int> k;
    for (const auto& t : x) k.push_back(2 * t.connector + (t.sign == 1 ? 0 : 1));
    return k;
  };
  std::vector<int> best_key;
  for (const Walk* base : std::array<const Walk*, 2>{&w, &rev})
    for (int r = 0; r < n; ++r) {
      Walk cand(base->begin() + r, base->end());
      cand.insert(cand.end(), base->begin(), base->begin() + r);
      auto k = key(cand);
      if (best_key.empty() || k < best_key) best_key = std::move(k), best = std::move(cand);
    }
  return best;
}

// Closed walks of total weight `len` that never turn straight back along the
// connector they arrived on, up to rotation and reversal.
std::vector<Walk> closed_walks(const JunctionGraph& g, const std::vector<int>& weights, int len, bool simple_only) {
  std::set<std::vector<int>> seen;
  std::vector<Walk> out;
  Walk cur;
  auto tail = [&](const DualTraversal& t) { return t.sign == 1 ? g.edges[t.connector].second : g.edges[t.connector].first; };
  auto head = [&](const DualTraversal& t) { return t.sign == 1 ? g.edges[t.connector].first : g.edges[t.connector].second; };
  auto reverses = [](const DualTraversal& a, const DualTraversal& b) { return a.connector == b.connector && a.sign == -b.sign; };
  for (int start = 0; start < g.vertices; ++start) {
    auto rec = [&](auto&& self, int at, int remaining) -> void {
      if (remaining == 0) {
        if (at != start || reverses(cur.back(), cur.front())) return;
        Walk c = canonical_walk(cur);
        std::vector<int> k;
        for (const auto& t : c) k.push_back(2 * t.connector + (t.sign == 1 ? 0 : 1));
        if (seen.insert(k).second) out.push_back(std::move(c));
        return;
      }
      for (int j = 0; j < static_cast<int>(g.edges.size()); ++j) {
        if (weights[j] > remaining) continue;
        for (int sign : {1, -1}) {
          const DualTraversal t{j, sign};
          if (head(t) != at) continue;
          if (!cur.empty() && reverses(cur.back(), t)) continue;
          if (simple_only && std::any_of(cur.begin(), cur.end(), [&](const DualTraversal& u) { return u.connector == j; }))
            continue;
          cur.push_back(t);
          self(self, tail(t), remaining - weights[j]);
          cur.pop_back();
        }
      }
    };
    rec(rec, start, len);
  }
  return out;
}

}  // namespace

EnumerationResult enumerate_bounded(int k, int m, int half_length, std::uint64_t budget, bool simple_only) {
  if (k < 1 || m < 1 || half_length < 1) throw InvalidArgument("enumerate_bounded needs k, m, l >= 1");
  const int len = 2 * half_length;
  EnumerationResult res;
  std::map<std::vector<int>, AbstractDiagram> found;
  for (int c = 1; c <= m; ++c) {
    for (const auto& g : junction_graphs(c)) {
      for (int colours = 0; colours < (1 << g.vertices); ++colours) {
        auto colour = [&](int v) { return (colours >> v) & 1; };  // 0 = factor
        std::vector<int> weights(c, 0);
        auto choose_weights = [&](auto&& self, int j) -> void {
          if (j == c) {
            const auto walks = closed_walks(g, weights, len, simple_only);
            std::vector<int> pick;
            auto choose_faces = [&](auto&& fself, int from) -> void {
              if (!pick.empty()) {
                std::vector<char> covered(c, 0);
                for (int p : pick)
                  for (const auto& t : walks[p]) covered[t.connector] = 1;
                if (std::count(covered.begin(), covered.end(), 1) == c) {
                  if (++res.candidates > budget) throw BudgetExceeded("enumeration exceeded its candidate budget");
                  WeightedDecoratedDualGraph dg;
                  dg.half_length = half_length;
                  for (int e = 0; e < c; ++e) dg.connectors.push_back(DualConnector{weights[e], colour(g.edges[e].first) == 0});
                  for (std::size_t f = 0; f < pick.size(); ++f) {
                    const Walk& w = walks[pick[f]];
                    const auto& t0 = w.front();
                    const int entry = t0.sign == 1 ? g.edges[t0.connector].first : g.edges[t0.connector].second;
                    dg.faces.push_back(DualFace{w, colour(entry) == 0 ? 0 : 1, 1, static_cast<int>(f)});
                  }
                  AbstractDiagram d = decode_dual(dg);
                  std::vector<std::vector<int>> sides;
                  for (const auto& face : d.faces()) sides.push_back(face.edges);
                  // Keep only diagrams whose vertex identifications follow from the edge gluing.
                  if (d.is_connected() &&
                      AbstractDiagram::from_side_labels(half_length, sides).vertex_count() == d.vertex_count() &&
                      static_cast<int>(connectors(d).size()) == c) {
                    auto code = geometric_canonical_form(d);
                    found.emplace(std::move(code), std::move(d));
                  }
                }
              }
              if (static_cast<int>(pick.size()) == k) return;
              for (int p = from; p < static_cast<int>(walks.size()); ++p) {
                pick.push_back(p);
                fself(fself, p);
                pick.pop_back();
              }
            };
            choose_faces(choose_faces, 0);
            return;
          }
          const int parity = colour(g.edges[j].first) != colour(g.edges[j].second) ? 1 : 0;
          for (int w = parity == 1 ? 1 : 2; w <= len; w += 2) {
            weights[j] = w;
            self(self, j + 1);
          }
        };
        choose_weights(choose_weights, 0);
      }
    }
  }
  for (auto& [code, d] : found) res.classes.push_back(std::move(d));
  return res;
}

namespace {

std::vector<int> boundary_cycle(const AbstractDiagram& d) {
  const auto deg = d.edge_degrees();
  std::map<int, std::vector<int>> at;
  int first = -1;
  for (int e = 0; e < d.edge_count(); ++e) {
    if (deg[e] != 1) continue;
    at[d.edge(e).factor_end].push_back(e);
    at[d.edge(e).central_end].push_back(e);
    if (first < 0) first = e;
  }
  std::vector<int> cyc;
  if (first < 0) return cyc;
  int e = first, v = d.edge(first).central_end;
  do {
    cyc.push_back(e);
    const auto& inc = at[v];
    const int next = inc[0] == e ? inc[1] : inc[0];
    v = d.edge(next).factor_end == v ? d.edge(next).central_end : d.edge(next).factor_end;
    e = next;
  } while (e != first);
  return cyc;
}

}  // namespace

std::vector<AbstractDiagram> enumerate_discs(int k, int half_length) {
  const int len = 2 * half_length;
  std::vector<int> one(len);
  std::iota(one.begin(), one.end(), 0);
  std::map<std::vector<int>, AbstractDiagram> level;
  {
    auto d = AbstractDiagram::from_side_labels(half_length, {one});
    level.emplace(geometric_canonical_form(d), d);
  }
  std::vector<AbstractDiagram> out;
  for (int area = 1; area <= k; ++area) {
    std::map<std::vector<int>, AbstractDiagram> next;
    for (const auto& [code, d] : level) {
      out.push_back(d);
      if (area == k) continue;
      std::vector<std::vector<int>> sides;
      for (const auto& f : d.faces()) sides.push_back(f.edges);
      const auto cyc = boundary_cycle(d);
      const int b = static_cast<int>(cyc.size());
      for (int arc = 1; arc <= std::min(len - 1, b - 1); ++arc)
        for (int p = 0; p < b; ++p)
          for (int o = 0; o < len; ++o)
            for (int dir : {1, -1}) {
              std::vector<int> fresh(len);
              for (int s = 0; s < len; ++s) fresh[s] = d.edge_count() + s;
              for (int t = 0; t < arc; ++t) fresh[((o + dir * t) % len + len) % len] = cyc[(p + t) % b];
              auto all = sides;
              all.push_back(fresh);
              AbstractDiagram nd;
              try {
                nd = AbstractDiagram::from_side_labels(half_length, all);
              } catch (const InvalidArgument&) {
                continue;
              }
              if (nd.has_backtracking() || !nd.is_disc()) continue;
              next.emplace(geometric_canonical_form(nd), std::move(nd));
            }
    }
    level = std::move(next);
  }
  return out;
}

AbstractDiagram random_diagram(int faces, int half_length, double glue_probability, Rng& rng) {
  const int len = 2 * half_length;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<std::vector<int>> sides(faces, std::vector<int>(len));
    int labels = 0;
    for (auto& poly : sides)
      for (int& s : poly)
        s = (labels > 0 && rng.uniform01() < glue_probability) ? static_cast<int>(rng.below(labels)) : labels++;
    const auto d = AbstractDiagram::from_side_labels(half_length, sides);
    if (d.has_backtracking() || !d.is_connected()) continue;
    std::vector<Face> fs = d.faces();
    for (auto& f : fs) {
      std::rotate(f.edges.begin(), f.edges.begin() + 2 * static_cast<int>(rng.below(half_length)), f.edges.end());
      f.orientation = rng.below(2) ? 1 : -1;
      f.cls = static_cast<int>(rng.below(faces));
    }
    return d.with_faces(std::move(fs));
  }
  throw BudgetExceeded("could not generate a connected diagram without backtracking");
}

}  // namespace fpd
