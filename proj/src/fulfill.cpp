#include <algorithm>
#include <map>
#include <set>

#include "fpd/diagram.hpp"
#include "fpd/error.hpp"

namespace fpd {

namespace {

struct VertexCorners {
  std::vector<Corner> corners;
  int edge_count = 0;
  bool single_cycle = false;
};

class Checker {
 public:
  Checker(const AbstractDiagram& d, const FreeProduct& group, const Alphabet& alphabet)
      : d_(d), group_(group), alphabet_(alphabet) {
    std::map<int, std::set<int>> edges_at;
    for (int f = 0; f < d.area(); ++f) {
      for (const auto& c : d.factor_corners(f)) {
        auto& vc = by_vertex_[c.vertex];
        vc.corners.push_back(c);
      }
    }
    for (int e = 0; e < d.edge_count(); ++e) edges_at[d.edge(e).factor_end].insert(e);
    for (auto& [v, vc] : by_vertex_) {
      vc.edge_count = static_cast<int>(edges_at[v].size());
      vc.single_cycle = link_is_single_cycle(vc, edges_at[v]);
    }
    for (const auto& [v, vc] : by_vertex_)
      for (const auto& c : vc.corners) vertices_of_face_[c.face].insert(v);
  }

  const std::set<int>& vertices_of_face(int f) const { return vertices_of_face_.at(f); }

  /// rotation(c) returns the letter of corner c, or -1 if not yet assigned.
  template <class Rotation>
  bool vertex_ok(int v, const Rotation& rotation) const {
    const VertexCorners& vc = by_vertex_.at(v);
    int factor = -1;
    bool complete = true;
    for (std::size_t i = 0; i < vc.corners.size(); ++i) {
      const Corner& a = vc.corners[i];
      const int ra = rotation(a);
      if (ra < 0) {
        complete = false;
        continue;
      }
      const int fa = alphabet_.factor_of(ra);
      if (factor >= 0 && fa != factor) return false;
      factor = fa;
      for (std::size_t j = i + 1; j < vc.corners.size(); ++j) {
        const Corner& b = vc.corners[j];
        const int rb = rotation(b);
        if (rb < 0) continue;
        if (a.in_edge == b.in_edge && a.out_edge == b.out_edge && ra != rb) return false;
        if (a.in_edge == b.out_edge && a.out_edge == b.in_edge && alphabet_.inverse(ra) != rb) return false;
      }
    }
    if (complete && vc.single_cycle) return cycle_product_trivial(vc, rotation, factor);
    return true;
  }

  template <class Rotation>
  bool all_ok(const Rotation& rotation) const {
    for (const auto& [v, vc] : by_vertex_)
      if (!vertex_ok(v, rotation)) return false;
    return true;
  }

 private:
  static bool link_is_single_cycle(const VertexCorners& vc, const std::set<int>& edges) {
    if (static_cast<int>(vc.corners.size()) != static_cast<int>(edges.size()) || edges.empty()) return false;
    std::map<int, int> count;
    for (const auto& c : vc.corners) ++count[c.in_edge], ++count[c.out_edge];
    for (int e : edges)
      if (count[e] != 2) return false;
    // Connected: walk from the first corner and see every corner.
    std::vector<char> used(vc.corners.size(), 0);
    int cur_edge = vc.corners[0].out_edge;
    used[0] = 1;
    std::size_t seen = 1;
    for (;;) {
      int next = -1;
      for (std::size_t i = 0; i < vc.corners.size(); ++i)
        if (!used[i] && (vc.corners[i].in_edge == cur_edge || vc.corners[i].out_edge == cur_edge)) {
          next = static_cast<int>(i);
          break;
        }
      if (next < 0) break;
      used[next] = 1;
      ++seen;
      const Corner& c = vc.corners[next];
      cur_edge = c.in_edge == cur_edge ? c.out_edge : c.in_edge;
    }
    return seen == vc.corners.size();
  }

  template <class Rotation>
  bool cycle_product_trivial(const VertexCorners& vc, const Rotation& rotation, int factor) const {
    const FactorGroup& g = group_.factor(factor);
    std::vector<char> used(vc.corners.size(), 0);
    Element prod = alphabet_.letter(rotation(vc.corners[0])).element;
    int cur_edge = vc.corners[0].out_edge;
    used[0] = 1;
    for (std::size_t step = 1; step < vc.corners.size(); ++step) {
      for (std::size_t i = 0; i < vc.corners.size(); ++i) {
        const Corner& c = vc.corners[i];
        if (used[i] || (c.in_edge != cur_edge && c.out_edge != cur_edge)) continue;
        used[i] = 1;
        const Element& r = alphabet_.letter(rotation(c)).element;
        if (c.in_edge == cur_edge) {
          prod = g.multiply(prod, r);
          cur_edge = c.out_edge;
        } else {
          prod = g.multiply(prod, g.inverse(r));
          cur_edge = c.in_edge;
        }
        break;
      }
    }
    return g.is_identity(prod);
  }

  const AbstractDiagram& d_;
  const FreeProduct& group_;
  const Alphabet& alphabet_;
  std::map<int, VertexCorners> by_vertex_;
  std::map<int, std::set<int>> vertices_of_face_;
};

std::vector<int> class_labels(const AbstractDiagram& d) {
  std::set<int> s;
  for (const auto& f : d.faces()) s.insert(f.cls);
  return {s.begin(), s.end()};
}

}  // namespace

std::optional<Decoration> fulfill(const AbstractDiagram& d, const FreeProduct& group, const Alphabet& alphabet,
                                  const std::vector<Relator>& relators, const FulfillOptions& options,
                                  const std::vector<int>& fixed) {
  const auto labels = class_labels(d);
  const int classes = static_cast<int>(labels.size());
  if (classes > options.max_classes) throw SearchBudgetExceeded("too many face classes for fulfillability search");
  for (const auto& r : relators)
    if (static_cast<int>(r.size()) != d.half_length()) throw InvalidArgument("relator length differs from l");
  std::vector<int> face_class(d.area());
  std::vector<std::vector<int>> faces_of(classes);
  for (int f = 0; f < d.area(); ++f) {
    face_class[f] = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), d.face(f).cls) - labels.begin());
    faces_of[face_class[f]].push_back(f);
  }
  std::vector<int> assign(classes, -1);
  auto rotation = [&](const Corner& c) {
    const int r = assign[face_class[c.face]];
    return r < 0 ? -1 : alphabet.inverse(relators[r][c.index]);
  };
  Checker checker(d, group, alphabet);
  std::uint64_t nodes = 0;
  std::vector<char> taken(relators.size(), 0);
  auto rec = [&](auto&& self, int c) -> bool {
    if (c == classes) return true;
    for (int r = 0; r < static_cast<int>(relators.size()); ++r) {
      if (c < static_cast<int>(fixed.size()) && fixed[c] >= 0 && fixed[c] != r) continue;
      if (options.distinct_relators && taken[r]) continue;
      if (++nodes > options.max_nodes) throw SearchBudgetExceeded("fulfillability search exceeded its node budget");
      assign[c] = r;
      bool ok = true;
      for (int f : faces_of[c]) {
        for (int v : checker.vertices_of_face(f))
          if (!checker.vertex_ok(v, rotation)) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (ok) {
        taken[r] = 1;
        if (self(self, c + 1)) return true;
        taken[r] = 0;
      }
      assign[c] = -1;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  Decoration dec;
  dec.class_relator = assign;
  for (int f = 0; f < d.area(); ++f) {
    std::vector<int> rot;
    for (const auto& c : d.factor_corners(f)) rot.push_back(rotation(c));
    dec.rotation.push_back(std::move(rot));
  }
  return dec;
}

bool decoration_is_valid(const AbstractDiagram& d, const FreeProduct& group, const Alphabet& alphabet,
                         const std::vector<Relator>& relators, const Decoration& dec) {
  const auto labels = class_labels(d);
  if (dec.class_relator.size() != labels.size() || static_cast<int>(dec.rotation.size()) != d.area()) return false;
  for (int f = 0; f < d.area(); ++f) {
    const int c = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), d.face(f).cls) - labels.begin());
    const int r = dec.class_relator[c];
    if (r < 0 || r >= static_cast<int>(relators.size())) return false;
    if (static_cast<int>(dec.rotation[f].size()) != d.half_length()) return false;
    for (int k = 0; k < d.half_length(); ++k)
      if (alphabet.inverse(dec.rotation[f][k]) != relators[r][k]) return false;
  }
  Checker checker(d, group, alphabet);
  return checker.all_ok([&](const Corner& c) { return dec.rotation[c.face][c.index]; });
}

}  // namespace fpd
