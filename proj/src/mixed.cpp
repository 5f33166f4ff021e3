#include "fpd/mixed.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "fpd/error.hpp"

namespace fpd {

namespace {

bool is_z(const FactorGroup& g) {
  return g.rank() == 1 && (g.kind() == FactorKind::Free || g.kind() == FactorKind::FreeAbelian);
}

std::int64_t z_translation(const FactorGroup& g, const Element& e) {
  if (g.kind() == FactorKind::FreeAbelian) return e.repr.empty() ? 0 : e.repr[0];
  std::int64_t t = 0;
  for (auto x : e.repr) t += x > 0 ? 1 : -1;
  return t;
}

std::vector<std::vector<int>> adjacency(const Fiber& f) {
  std::vector<std::vector<int>> adj(f.vertex_count);
  for (const auto& [a, b] : f.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

// Lexicographically least geodesic vertex sequence from `from` to `to`.
std::vector<int> lex_geodesic(const std::vector<std::vector<int>>& adj, int from, int to) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> queue{to};
  dist[to] = 0;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int y : adj[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  if (dist[from] < 0) throw InvalidArgument("fiber is disconnected");
  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    for (int y : adj[cur])
      if (dist[y] == dist[cur] - 1) {
        cur = y;
        break;
      }
    path.push_back(cur);
  }
  return path;
}

}  // namespace

Fiber Fiber::point() {
  Fiber f;
  f.vertex_count = 1;
  f.act = [](const Element&, int v) -> std::optional<int> { return v; };
  f.description = "point";
  return f;
}

Fiber Fiber::line(const FactorGroup& group, int m, int step) {
  if (!is_z(group)) throw InvalidArgument("the line fiber needs the factor Z");
  if (m < 0) throw InvalidArgument("line truncation must be non-negative");
  if (step < 1) throw InvalidArgument("line step must be positive");
  const int half = m * step;
  Fiber f;
  f.vertex_count = 2 * half + 1;
  for (int j = 0; j < 2 * half; ++j) f.edges.emplace_back(j, j + 1);
  f.basepoint = half;
  f.act = [group, half, step](const Element& g, int v) -> std::optional<int> {
    const std::int64_t w = v + step * z_translation(group, g);
    if (w < 0 || w > 2 * half) return std::nullopt;
    return static_cast<int>(w);
  };
  f.checked_elements = group.generators();
  f.description = "line[-" + std::to_string(m) + "," + std::to_string(m) + "]";
  if (step != 1) f.description += " step " + std::to_string(step);
  return f;
}

Fiber Fiber::from_permutations(const FactorGroup& group, int vertex_count, std::vector<std::pair<int, int>> edges,
                               std::vector<std::array<int, 4>> squares, int basepoint,
                               const std::vector<std::vector<int>>& generator_perms, std::string description) {
  if (group.kind() != FactorKind::Finite) throw InvalidArgument("permutation fibers need a finite factor");
  if (generator_perms.size() != group.defining_generators().size())
    throw InvalidArgument("one permutation per defining generator is required");
  if (basepoint < 0 || basepoint >= vertex_count) throw InvalidArgument("fiber basepoint out of range");
  for (const auto& [a, b] : edges)
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count || a == b) throw InvalidArgument("bad fiber edge");
  std::vector<std::vector<int>> inverse;
  for (const auto& p : generator_perms) {
    if (static_cast<int>(p.size()) != vertex_count) throw InvalidArgument("permutation has the wrong degree");
    std::vector<int> inv(vertex_count, -1);
    for (int v = 0; v < vertex_count; ++v) {
      if (p[v] < 0 || p[v] >= vertex_count || inv[p[v]] >= 0) throw InvalidArgument("not a permutation");
      inv[p[v]] = v;
    }
    inverse.push_back(std::move(inv));
  }
  const int n = static_cast<int>(*group.order());
  std::vector<std::vector<int>> perm(n);
  for (int x = 0; x < n; ++x) {
    std::vector<int> p(vertex_count);
    for (int v = 0; v < vertex_count; ++v) {
      int w = v;
      const auto word = group.spell(Element{{x}});
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        w = *it > 0 ? generator_perms[*it - 1][w] : inverse[-*it - 1][w];
      p[v] = w;
    }
    perm[x] = std::move(p);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = group.multiply(Element{{a}}, Element{{b}}).repr[0];
      for (int v = 0; v < vertex_count; ++v)
        if (perm[ab][v] != perm[a][perm[b][v]]) throw InvalidArgument("permutations do not define a group action");
    }
  std::multiset<std::pair<int, int>> edge_set;
  for (auto [a, b] : edges) edge_set.emplace(std::min(a, b), std::max(a, b));
  std::set<std::set<int>> square_set;
  for (const auto& s : squares) square_set.insert(std::set<int>(s.begin(), s.end()));
  for (const auto& p : generator_perms) {
    std::multiset<std::pair<int, int>> image;
    for (auto [a, b] : edges) image.emplace(std::min(p[a], p[b]), std::max(p[a], p[b]));
    if (image != edge_set) throw InvalidArgument("generator does not preserve the fiber edges");
    for (const auto& s : squares)
      if (!square_set.count({p[s[0]], p[s[1]], p[s[2]], p[s[3]]}))
        throw InvalidArgument("generator does not preserve the fiber squares");
  }
  Fiber f;
  f.vertex_count = vertex_count;
  f.edges = std::move(edges);
  f.squares = std::move(squares);
  f.basepoint = basepoint;
  f.act = [perm](const Element& g, int v) -> std::optional<int> { return perm.at(g.repr.at(0)).at(v); };
  for (int x = 0; x < n; ++x) f.checked_elements.push_back(Element{{x}});
  f.description = description.empty() ? "finite(" + std::to_string(vertex_count) + ")" : std::move(description);
  return f;
}

bool Fiber::has_inversion() const {
  for (const auto& g : checked_elements)
    for (const auto& [a, b] : edges) {
      const auto ga = act(g, a);
      const auto gb = act(g, b);
      if (ga && gb && *ga == b && *gb == a) return true;
    }
  return false;
}

MixedComplex build_mixed(const PolygonalComplex& x, const FreeProduct& group, const Alphabet& alphabet,
                         const std::vector<Fiber>& fibers) {
  if (fibers.size() != group.rank()) throw InvalidArgument("one fiber per factor is required");
  for (const auto& f : fibers)
    if (f.has_inversion()) throw InvalidArgument("fiber action inverts an edge");

  // Group elements attached to each (factor vertex, incident edge) pair,
  // propagated through the corner letters of the polygons.
  struct Step {
    int to_edge;
    Element by;
  };
  std::map<std::pair<int, int>, std::vector<Step>> steps;
  for (const auto& p : x.polygons()) {
    const std::size_t n = p.edges.size();
    std::size_t t = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const int v = p.vertices[j];
      if (x.vertex(v).kind != ComplexVertexKind::Factor) continue;
      if (t >= p.letters.size()) throw InvalidArgument("mixed construction needs decorated polygons");
      const int letter = p.letters[t++];
      const int i = alphabet.factor_of(letter);
      if (i != x.vertex(v).factor) throw InvalidArgument("corner letter lies in the wrong factor");
      const int in = p.edges[(j + n - 1) % n];
      const int out = p.edges[j];
      const Element& e = alphabet.letter(letter).element;
      steps[{v, in}].push_back(Step{out, e});
      steps[{v, out}].push_back(Step{in, group.factor(i).inverse(e)});
    }
    if (t != p.letters.size()) throw InvalidArgument("polygon letters do not match its factor corners");
  }
  const auto inc = x.incidence();
  std::map<std::pair<int, int>, Element> elem;
  for (int v = 0; v < x.vertex_count(); ++v) {
    if (x.vertex(v).kind != ComplexVertexKind::Factor) continue;
    const FactorGroup& g = group.factor(x.vertex(v).factor);
    for (int root : inc[v]) {
      if (elem.count({v, root})) continue;
      elem[{v, root}] = g.identity();
      std::deque<int> queue{root};
      while (!queue.empty()) {
        const int e = queue.front();
        queue.pop_front();
        const Element here = elem.at({v, e});
        for (const auto& s : steps[{v, e}]) {
          const Element there = g.multiply(here, s.by);
          const auto it = elem.find({v, s.to_edge});
          if (it == elem.end()) {
            elem[{v, s.to_edge}] = there;
            queue.push_back(s.to_edge);
          } else if (it->second != there) {
            throw InvalidArgument("inconsistent decoration at a factor vertex");
          }
        }
      }
    }
  }

  MixedComplex m;
  for (const auto& f : fibers) m.fiber_descriptions.push_back(f.description);
  std::vector<std::vector<std::vector<int>>> adj;
  for (const auto& f : fibers) adj.push_back(adjacency(f));
  // Chosen geodesics per letter.
  std::vector<std::vector<int>> alpha(alphabet.size());
  for (int letter = 0; letter < alphabet.size(); ++letter) {
    const int i = alphabet.factor_of(letter);
    const Fiber& f = fibers[i];
    const auto target = f.act(alphabet.letter(letter).element, f.basepoint);
    if (!target) throw ResourceLimit("fiber truncation is too small for the ball elements");
    alpha[letter] = lex_geodesic(adj[i], f.basepoint, *target);
    m.tau = std::max(m.tau, static_cast<int>(alpha[letter].size()) - 1);
  }

  // Vertices: non-factor base vertices once, factor vertices as fiber copies.
  std::vector<int> first(x.vertex_count());
  for (int v = 0; v < x.vertex_count(); ++v) {
    first[v] = static_cast<int>(m.vertices.size());
    const auto& bv = x.vertex(v);
    if (bv.kind == ComplexVertexKind::Factor) {
      for (int j = 0; j < fibers[bv.factor].vertex_count; ++j) {
        m.vertices.push_back(MixedVertex{bv.kind, bv.factor, j});
        m.vertex_projection.push_back(v);
      }
    } else {
      m.vertices.push_back(MixedVertex{bv.kind, bv.factor, -1});
      m.vertex_projection.push_back(v);
    }
  }
  auto attach = [&](int v, int e) {
    const auto& bv = x.vertex(v);
    if (bv.kind != ComplexVertexKind::Factor) return first[v];
    const Fiber& f = fibers[bv.factor];
    const auto it = elem.find({v, e});
    const Element g = it == elem.end() ? group.factor(bv.factor).identity() : it->second;
    const auto p = f.act(g, f.basepoint);
    if (!p) throw ResourceLimit("fiber truncation is too small for the attaching points");
    return first[v] + *p;
  };
  for (int e = 0; e < x.edge_count(); ++e) {
    m.edges.push_back(MixedEdge{attach(x.edge(e).u, e), attach(x.edge(e).v, e), MixedEdgeKind::Polygonal});
    m.edge_projection.push_back(e);
  }
  std::map<std::pair<int, int>, int> cubical;
  for (int v = 0; v < x.vertex_count(); ++v) {
    const auto& bv = x.vertex(v);
    if (bv.kind != ComplexVertexKind::Factor) continue;
    const Fiber& f = fibers[bv.factor];
    for (const auto& [a, b] : f.edges) {
      const int u = first[v] + a;
      const int w = first[v] + b;
      cubical[{std::min(u, w), std::max(u, w)}] = static_cast<int>(m.edges.size());
      m.edges.push_back(MixedEdge{u, w, MixedEdgeKind::Cubical});
      m.edge_projection.push_back(-1);
    }
    for (const auto& s : f.squares)
      m.squares.push_back({first[v] + s[0], first[v] + s[1], first[v] + s[2], first[v] + s[3]});
  }

  for (int pi = 0; pi < x.polygon_count(); ++pi) {
    const auto& p = x.polygon(pi);
    const std::size_t n = p.edges.size();
    Polygon q;
    q.letters = p.letters;
    std::size_t t = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const int v = p.vertices[j];
      if (x.vertex(v).kind == ComplexVertexKind::Factor) {
        const int in = p.edges[(j + n - 1) % n];
        const int letter = p.letters[t++];
        const Fiber& f = fibers[x.vertex(v).factor];
        const Element g = elem.at({v, in});
        int prev = -1;
        for (int a : alpha[letter]) {
          const auto image = f.act(g, a);
          if (!image) throw ResourceLimit("fiber truncation is too small for the chosen geodesics");
          const int here = first[v] + *image;
          if (prev >= 0) {
            q.vertices.push_back(prev);
            q.edges.push_back(cubical.at({std::min(prev, here), std::max(prev, here)}));
          }
          prev = here;
        }
        q.vertices.push_back(prev);
      } else {
        q.vertices.push_back(first[v]);
      }
      q.edges.push_back(p.edges[j]);
    }
    m.polygons.push_back(std::move(q));
    m.polygon_projection.push_back(pi);
  }
  return m;
}

MixedComplex subdivide_polygonal(const MixedComplex& m, const PolygonalComplex& base, int k) {
  if (k < 1) throw InvalidArgument("subdivision needs k >= 1");
  const int pieces = 2 * k;
  const int base_edges = base.edge_count();
  const auto& vp = m.vertex_projection;
  MixedComplex out;
  out.vertices = m.vertices;
  out.vertex_projection = vp;
  out.squares = m.squares;
  out.polygon_projection = m.polygon_projection;
  out.geodesic_choice = m.geodesic_choice;
  out.tau = m.tau;
  out.fiber_descriptions = m.fiber_descriptions;
  // Polygonal edge e runs through chain[e] from the end over base.edge(e).u;
  // its pieces get ids pieces * e + s like the base subdivision.
  std::vector<std::vector<int>> chain(base_edges);
  std::vector<int> cubical_id(m.edges.size(), -1);
  out.edges.resize(static_cast<std::size_t>(pieces) * base_edges);
  out.edge_projection.resize(out.edges.size());
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    const auto& ed = m.edges[e];
    if (ed.kind == MixedEdgeKind::Cubical) continue;
    const int b = m.edge_projection[e];
    if (b != static_cast<int>(e) || b >= base_edges) throw InvalidArgument("polygonal edge ids must match the base");
    const bool forward = vp[ed.u] == base.edge(b).u;
    auto& c = chain[b];
    c.push_back(forward ? ed.u : ed.v);
    for (int s = 1; s < pieces; ++s) {
      c.push_back(static_cast<int>(out.vertices.size()));
      out.vertices.push_back(MixedVertex{ComplexVertexKind::Subdivision, -1, -1});
      out.vertex_projection.push_back(base.vertex_count() + b * (pieces - 1) + s - 1);
    }
    c.push_back(forward ? ed.v : ed.u);
    for (int s = 0; s < pieces; ++s) {
      out.edges[pieces * b + s] = MixedEdge{c[s], c[s + 1], MixedEdgeKind::Polygonal};
      out.edge_projection[pieces * b + s] = pieces * b + s;
    }
  }
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    if (m.edges[e].kind != MixedEdgeKind::Cubical) continue;
    cubical_id[e] = static_cast<int>(out.edges.size());
    out.edges.push_back(m.edges[e]);
    out.edge_projection.push_back(-1);
  }
  for (const auto& p : m.polygons) {
    Polygon q;
    q.letters = p.letters;
    for (std::size_t j = 0; j < p.edges.size(); ++j) {
      const int e = p.edges[j];
      if (m.edges[e].kind == MixedEdgeKind::Cubical) {
        q.vertices.push_back(p.vertices[j]);
        q.edges.push_back(cubical_id[e]);
        continue;
      }
      const auto& c = chain[e];
      const bool forward = c.front() == p.vertices[j];
      for (int s = 0; s < pieces; ++s) {
        q.vertices.push_back(forward ? c[s] : c[pieces - s]);
        q.edges.push_back(pieces * e + (forward ? s : pieces - 1 - s));
      }
    }
    out.polygons.push_back(std::move(q));
  }
  return out;
}

ProjectionAudit audit_projection(const MixedComplex& m, const PolygonalComplex& base) {
  ProjectionAudit a;
  const auto& vp = m.vertex_projection;
  std::vector<int> preimages(base.edge_count(), 0);
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    const auto& ed = m.edges[e];
    if (ed.kind == MixedEdgeKind::Cubical) {
      if (m.edge_projection[e] != -1 || vp[ed.u] != vp[ed.v]) a.cubes_to_points = false;
      continue;
    }
    const int b = m.edge_projection[e];
    if (b < 0 || b >= base.edge_count()) {
      a.polygonal_edges_bijective = false;
      continue;
    }
    ++preimages[b];
    const auto& be = base.edge(b);
    const bool ends = (vp[ed.u] == be.u && vp[ed.v] == be.v) || (vp[ed.u] == be.v && vp[ed.v] == be.u);
    if (!ends) a.polygonal_edges_bijective = false;
  }
  for (int c : preimages)
    if (c != 1) a.polygonal_edges_bijective = false;
  for (const auto& s : m.squares)
    for (int v : s)
      if (vp[v] != vp[s[0]]) a.cubes_to_points = false;

  bool first_run = true;
  for (std::size_t pi = 0; pi < m.polygons.size(); ++pi) {
    const auto& q = m.polygons[pi];
    const int bp = m.polygon_projection[pi];
    std::vector<int> projected;
    for (int e : q.edges)
      if (m.edges[e].kind == MixedEdgeKind::Polygonal) projected.push_back(m.edge_projection[e]);
    if (bp < 0 || bp >= base.polygon_count() || projected != base.polygon(bp).edges) a.polygons_to_polygons = false;
    // Maximal runs of one edge kind along the cyclic boundary.
    const std::size_t n = q.edges.size();
    auto kind = [&](std::size_t j) { return m.edges[q.edges[j % n]].kind; };
    std::size_t start = 0;
    while (start < n && kind(start) == kind(start + n - 1)) ++start;
    std::vector<std::pair<MixedEdgeKind, int>> runs;
    if (start == n) {
      runs.emplace_back(kind(0), static_cast<int>(n));
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == 0 || kind(start + j) != kind(start + j - 1))
          runs.emplace_back(kind(start + j), 1);
        else
          ++runs.back().second;
      }
    }
    for (const auto& [k, len] : runs) {
      if (k == MixedEdgeKind::Cubical) {
        a.max_cubical_run = std::max(a.max_cubical_run, len);
      } else {
        a.min_polygonal_run = first_run ? len : std::min(a.min_polygonal_run, len);
        a.max_polygonal_run = std::max(a.max_polygonal_run, len);
        first_run = false;
      }
    }
  }
  return a;
}

namespace {

char kind_char(ComplexVertexKind k) {
  switch (k) {
    case ComplexVertexKind::Central:
      return 'C';
    case ComplexVertexKind::Factor:
      return 'F';
    case ComplexVertexKind::Subdivision:
      return 'S';
  }
  return '?';
}

std::string no_spaces(std::string s) {
  std::replace(s.begin(), s.end(), ' ', '_');
  return s.empty() ? "-" : s;
}

template <class T>
void write_list(std::ostream& out, const std::vector<T>& v) {
  out << v.size();
  for (const auto& x : v) out << " " << x;
  out << "\n";
}

}  // namespace

std::string write_mixed(const MixedComplex& m) {
  std::ostringstream out;
  out << "fpd-mixed 1\n";
  out << "GEODESIC " << no_spaces(m.geodesic_choice) << "\n";
  out << "TAU " << m.tau << "\n";
  out << "FIBERS " << m.fiber_descriptions.size();
  for (const auto& d : m.fiber_descriptions) out << " " << no_spaces(d);
  out << "\n";
  out << "VERTICES " << m.vertices.size() << "\n";
  for (std::size_t v = 0; v < m.vertices.size(); ++v)
    out << v << " " << kind_char(m.vertices[v].kind) << " " << m.vertices[v].factor << " " << m.vertices[v].fiber_vertex
        << "\n";
  out << "EDGES " << m.edges.size() << "\n";
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    out << e << " " << m.edges[e].u << " " << m.edges[e].v << " "
        << (m.edges[e].kind == MixedEdgeKind::Polygonal ? 'P' : 'Q') << "\n";
  out << "POLYGONS " << m.polygons.size() << "\n";
  for (std::size_t p = 0; p < m.polygons.size(); ++p) {
    const auto& poly = m.polygons[p];
    out << p << " " << poly.edges.size() << " " << poly.letters.size() << " :";
    for (int v : poly.vertices) out << " " << v;
    out << " |";
    for (int e : poly.edges) out << " " << e;
    out << " |";
    for (int l : poly.letters) out << " " << l;
    out << "\n";
  }
  out << "CUBES " << m.squares.size() << "\n";
  for (std::size_t s = 0; s < m.squares.size(); ++s)
    out << s << " " << m.squares[s][0] << " " << m.squares[s][1] << " " << m.squares[s][2] << " " << m.squares[s][3]
        << "\n";
  out << "PROJECTION\n";
  out << "vertices ";
  write_list(out, m.vertex_projection);
  out << "edges ";
  write_list(out, m.edge_projection);
  out << "polygons ";
  write_list(out, m.polygon_projection);
  out << "END\n";
  return out.str();
}

MixedComplex read_mixed(const std::string& text) {
  std::istringstream in(text);
  auto word = [&]() {
    std::string w;
    if (!(in >> w)) throw ParseError("mixed: unexpected end of input");
    return w;
  };
  auto expect = [&](const std::string& w) {
    const std::string got = word();
    if (got != w) throw ParseError("mixed: expected '" + w + "', got '" + got + "'");
  };
  auto integer = [&]() {
    const std::string w = word();
    try {
      std::size_t pos = 0;
      const int v = std::stoi(w, &pos);
      if (pos != w.size()) throw ParseError("mixed: bad integer '" + w + "'");
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("mixed: bad integer '" + w + "'");
    }
  };
  auto count = [&]() {
    const int n = integer();
    if (n < 0) throw ParseError("mixed: negative count");
    return n;
  };
  auto id = [&](int expected) {
    if (integer() != expected) throw ParseError("mixed: ids must be consecutive");
  };
  MixedComplex m;
  expect("fpd-mixed");
  if (integer() != 1) throw ParseError("mixed: unsupported format version");
  expect("GEODESIC");
  m.geodesic_choice = word();
  expect("TAU");
  m.tau = integer();
  expect("FIBERS");
  for (int i = 0, n = count(); i < n; ++i) m.fiber_descriptions.push_back(word());
  expect("VERTICES");
  const int nv = count();
  for (int v = 0; v < nv; ++v) {
    id(v);
    MixedVertex mv;
    const std::string k = word();
    if (k == "C")
      mv.kind = ComplexVertexKind::Central;
    else if (k == "F")
      mv.kind = ComplexVertexKind::Factor;
    else if (k == "S")
      mv.kind = ComplexVertexKind::Subdivision;
    else
      throw ParseError("mixed: unknown vertex kind");
    mv.factor = integer();
    mv.fiber_vertex = integer();
    m.vertices.push_back(mv);
  }
  auto vertex_ref = [&]() {
    const int v = integer();
    if (v < 0 || v >= nv) throw ParseError("mixed: vertex reference out of range");
    return v;
  };
  expect("EDGES");
  const int ne = count();
  for (int e = 0; e < ne; ++e) {
    id(e);
    MixedEdge me;
    me.u = vertex_ref();
    me.v = vertex_ref();
    const std::string k = word();
    if (k != "P" && k != "Q") throw ParseError("mixed: unknown edge kind");
    me.kind = k == "P" ? MixedEdgeKind::Polygonal : MixedEdgeKind::Cubical;
    m.edges.push_back(me);
  }
  expect("POLYGONS");
  for (int p = 0, np = count(); p < np; ++p) {
    id(p);
    const int len = count();
    const int letters = count();
    Polygon poly;
    expect(":");
    for (int i = 0; i < len; ++i) poly.vertices.push_back(vertex_ref());
    expect("|");
    for (int i = 0; i < len; ++i) {
      const int e = integer();
      if (e < 0 || e >= ne) throw ParseError("mixed: edge reference out of range");
      poly.edges.push_back(e);
    }
    expect("|");
    for (int i = 0; i < letters; ++i) poly.letters.push_back(integer());
    m.polygons.push_back(std::move(poly));
  }
  expect("CUBES");
  for (int s = 0, ns = count(); s < ns; ++s) {
    id(s);
    m.squares.push_back({vertex_ref(), vertex_ref(), vertex_ref(), vertex_ref()});
  }
  expect("PROJECTION");
  auto read_list = [&](const std::string& name, std::vector<int>& out, std::size_t expected) {
    expect(name);
    const int n = count();
    if (static_cast<std::size_t>(n) != expected) throw ParseError("mixed: projection size mismatch");
    for (int i = 0; i < n; ++i) out.push_back(integer());
  };
  read_list("vertices", m.vertex_projection, m.vertices.size());
  read_list("edges", m.edge_projection, m.edges.size());
  read_list("polygons", m.polygon_projection, m.polygons.size());
  expect("END");
  return m;
}

}  // namespace fpd
