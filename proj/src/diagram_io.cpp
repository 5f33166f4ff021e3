#include "fpd/diagram_io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "fpd/dual_graph.hpp"
#include "fpd/error.hpp"

namespace fpd {

namespace {

std::vector<int> sorted_classes(const AbstractDiagram& d) {
  std::set<int> s;
  for (const auto& f : d.faces()) s.insert(f.cls);
  return {s.begin(), s.end()};
}

int class_index(const std::vector<int>& labels, int cls) {
  return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), cls) - labels.begin());
}

class Reader {
 public:
  explicit Reader(const std::string& text) : in_(text) {}

  void expect(const std::string& word) {
    std::string got;
    if (!(in_ >> got) || got != word) throw ParseError("diagram: expected '" + word + "', got '" + got + "'");
  }
  std::string word() {
    std::string w;
    if (!(in_ >> w)) throw ParseError("diagram: unexpected end of input");
    return w;
  }
  int integer() {
    const std::string w = word();
    try {
      std::size_t pos = 0;
      const int v = std::stoi(w, &pos);
      if (pos != w.size()) throw ParseError("diagram: bad integer '" + w + "'");
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("diagram: bad integer '" + w + "'");
    }
  }
  int count() {
    const int n = integer();
    if (n < 0) throw ParseError("diagram: negative count");
    return n;
  }

 private:
  std::istringstream in_;
};

}  // namespace

std::string write_diagram(const AbstractDiagram& d, const Decoration* decoration) {
  std::vector<int> order;
  const AbstractDiagram c = canonicalize(d, &order);
  std::ostringstream out;
  out << "fpd-diagram 1\n";
  out << "half_length " << c.half_length() << "\n";
  out << "vertices " << c.vertex_count() << "\n";
  for (int v = 0; v < c.vertex_count(); ++v)
    out << (v ? " " : "") << (c.kind(v) == VertexKind::Factor ? 'F' : 'C');
  out << "\n";
  out << "edges " << c.edge_count() << "\n";
  for (const auto& e : c.edges()) out << e.factor_end << " " << e.central_end << "\n";
  out << "faces " << c.area() << "\n";
  for (const auto& f : c.faces()) {
    out << f.orientation << " " << f.cls << " :";
    for (int e : f.edges) out << " " << e;
    out << "\n";
  }
  if (decoration) {
    const auto old_labels = sorted_classes(d);
    const auto new_labels = sorted_classes(c);
    if (decoration->class_relator.size() != old_labels.size() ||
        static_cast<int>(decoration->rotation.size()) != d.area())
      throw InvalidArgument("decoration does not match the diagram");
    std::vector<int> class_relator(new_labels.size(), -1);
    for (int i = 0; i < c.area(); ++i)
      class_relator[class_index(new_labels, c.face(i).cls)] =
          decoration->class_relator[class_index(old_labels, d.face(order[i]).cls)];
    out << "decoration\n";
    out << "class_relators " << class_relator.size();
    for (int r : class_relator) out << " " << r;
    out << "\n";
    // Rotation elements are listed in reading order from the distinguished
    // vertex, which the canonical relabelling preserves.
    for (int i = 0; i < c.area(); ++i) {
      const auto& rot = decoration->rotation[order[i]];
      out << "rotation " << i << " :";
      for (int x : rot) out << " " << x;
      out << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

DiagramRecord read_diagram(const std::string& text) {
  Reader r(text);
  r.expect("fpd-diagram");
  if (r.integer() != 1) throw ParseError("diagram: unsupported format version");
  r.expect("half_length");
  const int half_length = r.integer();
  if (half_length < 1) throw ParseError("diagram: half_length must be positive");
  r.expect("vertices");
  const int nv = r.count();
  std::vector<VertexKind> kinds;
  for (int v = 0; v < nv; ++v) {
    const std::string k = r.word();
    if (k == "F")
      kinds.push_back(VertexKind::Factor);
    else if (k == "C")
      kinds.push_back(VertexKind::Central);
    else
      throw ParseError("diagram: vertex kind must be F or C");
  }
  r.expect("edges");
  const int ne = r.count();
  std::vector<DiagramEdge> edges;
  for (int e = 0; e < ne; ++e) {
    const int a = r.integer();
    const int b = r.integer();
    edges.push_back(DiagramEdge{a, b});
  }
  r.expect("faces");
  const int nf = r.count();
  std::vector<Face> faces;
  for (int f = 0; f < nf; ++f) {
    Face face;
    face.orientation = r.integer();
    face.cls = r.integer();
    r.expect(":");
    for (int i = 0; i < 2 * half_length; ++i) face.edges.push_back(r.integer());
    faces.push_back(std::move(face));
  }
  DiagramRecord rec{AbstractDiagram(half_length, std::move(kinds), std::move(edges), std::move(faces)), std::nullopt};
  std::string w = r.word();
  if (w == "decoration") {
    Decoration dec;
    r.expect("class_relators");
    const int nc = r.count();
    if (nc != rec.diagram.class_count()) throw ParseError("diagram: class_relators count differs from class count");
    for (int i = 0; i < nc; ++i) dec.class_relator.push_back(r.integer());
    for (int f = 0; f < nf; ++f) {
      r.expect("rotation");
      if (r.integer() != f) throw ParseError("diagram: rotation lines out of order");
      r.expect(":");
      std::vector<int> rot;
      for (int k = 0; k < half_length; ++k) rot.push_back(r.integer());
      dec.rotation.push_back(std::move(rot));
    }
    rec.decoration = std::move(dec);
    w = r.word();
  }
  if (w != "end") throw ParseError("diagram: expected 'end', got '" + w + "'");
  return rec;
}

}  // namespace fpd
