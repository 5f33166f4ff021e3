#include "fpd/complex.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fpd/error.hpp"

namespace fpd {

namespace {

bool alternates(ComplexVertexKind a, ComplexVertexKind b) {
  if (a == ComplexVertexKind::Subdivision || b == ComplexVertexKind::Subdivision) return true;
  return a != b;
}

// Edge cycle up to rotation and reversal.
std::vector<int> cycle_key(const std::vector<int>& edges) {
  std::vector<int> best;
  const std::size_t n = edges.size();
  std::vector<int> rev(edges.rbegin(), edges.rend());
  for (const auto* base : std::array<const std::vector<int>*, 2>{&edges, &rev})
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<int> cand(base->begin() + static_cast<std::ptrdiff_t>(r), base->end());
      cand.insert(cand.end(), base->begin(), base->begin() + static_cast<std::ptrdiff_t>(r));
      if (best.empty() || cand < best) best = std::move(cand);
    }
  return best;
}

}  // namespace

PolygonalComplex::PolygonalComplex(std::vector<ComplexVertex> vertices, std::vector<ComplexEdge> edges,
                                   std::vector<Polygon> polygons, int basepoint)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), polygons_(std::move(polygons)), basepoint_(basepoint) {
  const int nv = vertex_count();
  if (nv > 0 && (basepoint_ < 0 || basepoint_ >= nv)) throw InvalidArgument("basepoint out of range");
  for (const auto& e : edges_) {
    if (e.u < 0 || e.u >= nv || e.v < 0 || e.v >= nv) throw InvalidArgument("edge endpoint out of range");
    if (!alternates(vertices_[e.u].kind, vertices_[e.v].kind))
      throw InvalidArgument("edge joins two vertices of the same type");
  }
  for (const auto& p : polygons_) {
    if (p.edges.empty() || p.vertices.size() != p.edges.size()) throw InvalidArgument("malformed polygon");
    if (p.edges.size() != polygons_[0].edges.size()) throw InvalidArgument("polygons differ in length");
    const std::size_t n = p.edges.size();
    for (std::size_t j = 0; j < n; ++j) {
      const int e = p.edges[j];
      if (e < 0 || e >= edge_count()) throw InvalidArgument("polygon edge out of range");
      const int a = p.vertices[j];
      const int b = p.vertices[(j + 1) % n];
      const auto& ed = edges_[e];
      if (!((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a))) throw InvalidArgument("polygon is not a closed path");
    }
  }
}

int PolygonalComplex::count(ComplexVertexKind kind) const {
  return static_cast<int>(std::count_if(vertices_.begin(), vertices_.end(),
                                        [&](const ComplexVertex& v) { return v.kind == kind; }));
}

std::vector<std::vector<int>> PolygonalComplex::incidence() const {
  std::vector<std::vector<int>> inc(vertices_.size());
  for (int e = 0; e < edge_count(); ++e) {
    inc[edges_[e].u].push_back(e);
    if (edges_[e].v != edges_[e].u) inc[edges_[e].v].push_back(e);
  }
  return inc;
}

std::vector<int> PolygonalComplex::distances_from(int v) const {
  const auto inc = incidence();
  std::vector<int> dist(vertices_.size(), -1);
  std::deque<int> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int e : inc[x]) {
      const int y = edges_[e].u == x ? edges_[e].v : edges_[e].u;
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

FiniteQuotient finite_quotient(const FreeProduct& group, const Alphabet& alphabet, const std::vector<Relator>& relators,
                               int max_cosets) {
  std::vector<int> base;
  Presentation p = presentation_of(group, alphabet, relators, &base);
  CosetTable t = coset_enumerate(p, max_cosets);
  return FiniteQuotient{std::move(p), std::move(base), std::move(t)};
}

PolygonalComplex build_XR_finite(const FreeProduct& group, const Alphabet& alphabet,
                                 const std::vector<Relator>& relators, const FiniteQuotient& quotient) {
  if (relators.empty()) throw InvalidArgument("an empty relator set gives no finite quotient");
  const CosetTable& t = quotient.table;
  const int n_el = t.coset_count();
  const int n_fac = static_cast<int>(group.rank());
  std::vector<ComplexVertex> vertices(n_el, ComplexVertex{ComplexVertexKind::Central, -1});
  // Factor vertices: orbits of right multiplication by each factor.
  std::vector<std::vector<int>> factor_vertex(n_fac, std::vector<int>(n_el, -1));
  for (int i = 0; i < n_fac; ++i) {
    const int gens = static_cast<int>(group.factor(i).defining_generators().size());
    for (int g = 0; g < n_el; ++g) {
      if (factor_vertex[i][g] >= 0) continue;
      const int id = static_cast<int>(vertices.size());
      vertices.push_back(ComplexVertex{ComplexVertexKind::Factor, i});
      std::deque<int> queue{g};
      factor_vertex[i][g] = id;
      while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        for (int s = 1; s <= gens; ++s) {
          const int y = t.apply(x, quotient.generator_base[i] + s);
          if (factor_vertex[i][y] < 0) {
            factor_vertex[i][y] = id;
            queue.push_back(y);
          }
        }
      }
    }
  }
  std::vector<ComplexEdge> edges;
  for (int g = 0; g < n_el; ++g)
    for (int i = 0; i < n_fac; ++i) edges.push_back(ComplexEdge{factor_vertex[i][g], g});
  auto edge_id = [&](int g, int i) { return g * n_fac + i; };
  std::vector<Polygon> polygons;
  std::set<std::vector<int>> seen;
  for (const auto& r : relators) {
    for (int g = 0; g < n_el; ++g) {
      Polygon p;
      int cur = g;
      for (int letter : r) {
        const int i = alphabet.factor_of(letter);
        const int next = t.apply_word(cur, spell_letter(group, alphabet, quotient.generator_base, letter));
        p.vertices.push_back(cur);
        p.edges.push_back(edge_id(cur, i));
        p.vertices.push_back(factor_vertex[i][cur]);
        p.edges.push_back(edge_id(next, i));
        p.letters.push_back(letter);
        cur = next;
      }
      if (cur != g) throw InvalidArgument("relator does not act trivially on the coset table");
      if (seen.insert(cycle_key(p.edges)).second) polygons.push_back(std::move(p));
    }
  }
  return PolygonalComplex(std::move(vertices), std::move(edges), std::move(polygons), 0);
}

PolygonalComplex complex_from_diagram(const AbstractDiagram& d, const Alphabet* alphabet,
                                      const std::vector<Relator>* face_relators) {
  if ((alphabet == nullptr) != (face_relators == nullptr))
    throw InvalidArgument("decorated conversion needs both the alphabet and the face relators");
  if (face_relators && static_cast<int>(face_relators->size()) != d.area())
    throw InvalidArgument("one relator per face is required");
  std::vector<ComplexVertex> vertices;
  for (int v = 0; v < d.vertex_count(); ++v)
    vertices.push_back(d.kind(v) == VertexKind::Factor ? ComplexVertex{ComplexVertexKind::Factor, 0}
                                                       : ComplexVertex{ComplexVertexKind::Central, -1});
  std::vector<ComplexEdge> edges;
  for (const auto& e : d.edges()) edges.push_back(ComplexEdge{e.factor_end, e.central_end});
  std::vector<Polygon> polygons;
  for (int f = 0; f < d.area(); ++f) {
    Polygon p;
    p.edges = d.reading_edges(f);
    const auto corners = d.factor_corners(f);
    // Reading vertex 2k is factor corner k; odd reading vertices are central.
    for (int i = 0; i < 2 * d.half_length(); ++i) {
      if (i % 2 == 0) {
        p.vertices.push_back(corners[i / 2].vertex);
      } else {
        const auto& e = d.edge(p.edges[i - 1]);
        p.vertices.push_back(e.central_end);
      }
    }
    if (face_relators) {
      p.letters = (*face_relators)[f];
      if (static_cast<int>(p.letters.size()) != d.half_length()) throw InvalidArgument("relator length differs from l");
      for (int k = 0; k < d.half_length(); ++k) vertices[corners[k].vertex].factor = alphabet->factor_of(p.letters[k]);
    }
    polygons.push_back(std::move(p));
  }
  return PolygonalComplex(std::move(vertices), std::move(edges), std::move(polygons), 0);
}

SubdivisionParams subdivision_params(const Density& d, int half_length, std::int64_t tau) {
  if (half_length < 1) throw InvalidArgument("l must be positive");
  if (tau < 0) throw InvalidArgument("tau must be non-negative");
  const Rational density(d.num, d.den);
  const Rational fifth(1, 5);
  if (density >= fifth) throw DensityTooHigh("subdivision needs d < 1/5");
  SubdivisionParams out;
  out.density = density;
  out.half_length = half_length;
  out.tau = tau;
  out.epsilon = std::min(fifth - density, Rational(1, half_length)) / 2;
  const Rational q = Rational(tau) / (out.epsilon * 4);
  std::int64_t ceil = q.numerator() / q.denominator();
  if (ceil * q.denominator() < q.numerator()) ++ceil;
  out.k = ceil + 1;
  out.polygon_length = 4 * out.k * half_length;
  return out;
}

PolygonalComplex subdivide(const PolygonalComplex& x, int k) {
  if (k < 1) throw InvalidArgument("subdivision needs k >= 1");
  const int pieces = 2 * k;
  std::vector<ComplexVertex> vertices = x.vertices();
  std::vector<ComplexEdge> edges;
  // Edge e becomes edges pieces*e .. pieces*e + pieces - 1, running from u to v.
  std::vector<std::vector<int>> chain(x.edge_count());
  for (int e = 0; e < x.edge_count(); ++e) {
    auto& c = chain[e];
    c.push_back(x.edge(e).u);
    for (int s = 1; s < pieces; ++s) {
      c.push_back(static_cast<int>(vertices.size()));
      vertices.push_back(ComplexVertex{ComplexVertexKind::Subdivision, -1});
    }
    c.push_back(x.edge(e).v);
    for (int s = 0; s < pieces; ++s) edges.push_back(ComplexEdge{c[s], c[s + 1]});
  }
  std::vector<Polygon> polygons;
  for (const auto& p : x.polygons()) {
    Polygon q;
    q.letters = p.letters;
    for (std::size_t j = 0; j < p.edges.size(); ++j) {
      const int e = p.edges[j];
      const bool forward = x.edge(e).u == p.vertices[j];
      for (int s = 0; s < pieces; ++s) {
        const int step = forward ? s : pieces - 1 - s;
        q.vertices.push_back(forward ? chain[e][s] : chain[e][pieces - s]);
        q.edges.push_back(pieces * e + step);
      }
    }
    polygons.push_back(std::move(q));
  }
  return PolygonalComplex(std::move(vertices), std::move(edges), std::move(polygons), x.basepoint());
}

std::vector<EmbeddedCycle> short_cycle_audit(const PolygonalComplex& x, int bound, std::uint64_t budget) {
  std::vector<EmbeddedCycle> out;
  const auto inc = x.incidence();
  std::uint64_t steps = 0;
  for (int s = 0; s < x.vertex_count(); ++s) {
    std::vector<int> path_v{s};
    std::vector<int> path_e;
    std::vector<char> on_path(x.vertex_count(), 0);
    on_path[s] = 1;
    auto rec = [&](auto&& self, int at) -> void {
      if (++steps > budget) throw BudgetExceeded("short cycle audit exceeded its step budget");
      for (int e : inc[at]) {
        if (!path_e.empty() && e == path_e.back()) continue;
        const int y = x.edge(e).u == at ? x.edge(e).v : x.edge(e).u;
        if (y == s) {
          // Close the cycle; keep one of its two directions.
          const int len = static_cast<int>(path_e.size()) + 1;
          if (len < bound && (path_e.empty() ? false : path_e.front() < e)) {
            EmbeddedCycle c{path_v, path_e};
            c.edges.push_back(e);
            out.push_back(std::move(c));
          }
          continue;
        }
        if (y < s || on_path[y] || static_cast<int>(path_e.size()) + 2 >= bound) continue;
        on_path[y] = 1;
        path_v.push_back(y);
        path_e.push_back(e);
        self(self, y);
        path_e.pop_back();
        path_v.pop_back();
        on_path[y] = 0;
      }
    };
    rec(rec, s);
  }
  return out;
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

}  // namespace

std::string write_complex(const PolygonalComplex& x) {
  std::ostringstream out;
  out << "fpd-complex 1\n";
  out << "BASEPOINT " << x.basepoint() << "\n";
  out << "VERTICES " << x.vertex_count() << "\n";
  for (int v = 0; v < x.vertex_count(); ++v) out << v << " " << kind_char(x.vertex(v).kind) << " " << x.vertex(v).factor << "\n";
  out << "EDGES " << x.edge_count() << "\n";
  for (int e = 0; e < x.edge_count(); ++e) out << e << " " << x.edge(e).u << " " << x.edge(e).v << "\n";
  out << "POLYGONS " << x.polygon_count() << "\n";
  for (int p = 0; p < x.polygon_count(); ++p) {
    const auto& poly = x.polygon(p);
    out << p << " " << poly.edges.size() << " " << poly.letters.size() << " :";
    for (int v : poly.vertices) out << " " << v;
    out << " |";
    for (int e : poly.edges) out << " " << e;
    out << " |";
    for (int l : poly.letters) out << " " << l;
    out << "\n";
  }
  out << "END\n";
  return out.str();
}

PolygonalComplex read_complex(const std::string& text) {
  std::istringstream in(text);
  auto word = [&]() {
    std::string w;
    if (!(in >> w)) throw ParseError("complex: unexpected end of input");
    return w;
  };
  auto expect = [&](const std::string& w) {
    const std::string got = word();
    if (got != w) throw ParseError("complex: expected '" + w + "', got '" + got + "'");
  };
  auto integer = [&]() {
    const std::string w = word();
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(w, &pos);
      if (pos != w.size()) throw ParseError("complex: bad integer '" + w + "'");
      return static_cast<int>(v);
    } catch (const std::logic_error&) {
      throw ParseError("complex: bad integer '" + w + "'");
    }
  };
  auto count = [&]() {
    const int n = integer();
    if (n < 0) throw ParseError("complex: negative count");
    return n;
  };
  expect("fpd-complex");
  if (integer() != 1) throw ParseError("complex: unsupported format version");
  expect("BASEPOINT");
  const int basepoint = integer();
  expect("VERTICES");
  const int nv = count();
  std::vector<ComplexVertex> vertices;
  for (int v = 0; v < nv; ++v) {
    if (integer() != v) throw ParseError("complex: vertex ids must be consecutive");
    const std::string k = word();
    ComplexVertex cv;
    if (k == "C")
      cv.kind = ComplexVertexKind::Central;
    else if (k == "F")
      cv.kind = ComplexVertexKind::Factor;
    else if (k == "S")
      cv.kind = ComplexVertexKind::Subdivision;
    else
      throw ParseError("complex: unknown vertex kind '" + k + "'");
    cv.factor = integer();
    vertices.push_back(cv);
  }
  expect("EDGES");
  const int ne = count();
  std::vector<ComplexEdge> edges;
  for (int e = 0; e < ne; ++e) {
    if (integer() != e) throw ParseError("complex: edge ids must be consecutive");
    const int u = integer();
    const int v = integer();
    edges.push_back(ComplexEdge{u, v});
  }
  expect("POLYGONS");
  const int np = count();
  std::vector<Polygon> polygons;
  for (int p = 0; p < np; ++p) {
    if (integer() != p) throw ParseError("complex: polygon ids must be consecutive");
    const int len = count();
    const int letters = count();
    Polygon poly;
    expect(":");
    for (int i = 0; i < len; ++i) poly.vertices.push_back(integer());
    expect("|");
    for (int i = 0; i < len; ++i) poly.edges.push_back(integer());
    expect("|");
    for (int i = 0; i < letters; ++i) poly.letters.push_back(integer());
    polygons.push_back(std::move(poly));
  }
  expect("END");
  return PolygonalComplex(std::move(vertices), std::move(edges), std::move(polygons), basepoint);
}

}  // namespace fpd
