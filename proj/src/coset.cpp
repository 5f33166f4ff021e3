#include "fpd/coset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "fpd/error.hpp"

namespace fpd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

// Parses one relator over single-letter generators with "(w)^n" groups.
std::vector<int> parse_relator(const std::string& text, std::size_t& pos, const std::vector<std::string>& gens,
                               bool nested) {
  std::vector<int> word;
  while (pos < text.size()) {
    const char ch = text[pos];
    if (ch == ' ') {
      ++pos;
    } else if (ch == '(') {
      ++pos;
      const auto inner = parse_relator(text, pos, gens, true);
      if (pos >= text.size() || text[pos] != ')') throw ParseError("presentation: unbalanced parenthesis");
      ++pos;
      int times = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::size_t used = 0;
        try {
          times = std::stoi(text.substr(pos), &used);
        } catch (const std::logic_error&) {
          throw ParseError("presentation: bad exponent");
        }
        if (times < 0) throw ParseError("presentation: negative exponent");
        pos += used;
      }
      for (int t = 0; t < times; ++t) word.insert(word.end(), inner.begin(), inner.end());
    } else if (ch == ')') {
      if (!nested) throw ParseError("presentation: unbalanced parenthesis");
      return word;
    } else if (std::isalpha(static_cast<unsigned char>(ch))) {
      const std::string name(1, static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
      const auto it = std::find(gens.begin(), gens.end(), name);
      if (it == gens.end()) throw ParseError("presentation: unknown generator '" + name + "'");
      const int g = static_cast<int>(it - gens.begin()) + 1;
      word.push_back(std::isupper(static_cast<unsigned char>(ch)) ? -g : g);
      ++pos;
    } else {
      throw ParseError(std::string("presentation: unexpected character '") + ch + "'");
    }
  }
  if (nested) throw ParseError("presentation: unbalanced parenthesis");
  return word;
}

// Column of a signed generator in the working table.
int column(int x) { return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1; }
int inverse_column(int col) { return col ^ 1; }

class Enumerator {
 public:
  Enumerator(const Presentation& p, int max_cosets)
      : cols_(2 * static_cast<int>(p.generators.size())), max_(max_cosets) {
    for (const auto& r : p.relators) {
      std::vector<int> w;
      for (int x : r) w.push_back(column(x));
      if (!w.empty()) relators_.push_back(std::move(w));
    }
    new_coset();
  }

  CosetTable run() {
    for (int c = 0; c < static_cast<int>(table_.size()); ++c) {
      for (const auto& r : relators_) {
        if (!live(c)) break;
        scan_and_fill(c, r);
      }
      for (int x = 0; x < cols_ && live(c); ++x)
        if (table_[c][x] < 0) define(c, x);
    }
    return compress();
  }

 private:
  bool live(int c) const { return parent_[c] == c; }

  int new_coset() {
    if (static_cast<int>(table_.size()) >= max_) throw Overflow("coset enumeration exceeded its coset bound");
    table_.emplace_back(cols_, -1);
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(table_.size()) - 1;
  }

  void define(int c, int x) {
    const int n = new_coset();
    table_[c][x] = n;
    table_[n][inverse_column(x)] = c;
  }

  void scan_and_fill(int c, const std::vector<int>& w) {
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][inverse_column(w[j])] >= 0) b = table_[b][inverse_column(w[j--])];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        table_[f][w[i]] = b;
        table_[b][inverse_column(w[i])] = f;
        return;
      }
      define(f, w[i]);
    }
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    queue.push_back(l);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int g = queue[q];
      for (int x = 0; x < cols_; ++x) {
        const int d = table_[g][x];
        if (d < 0) continue;
        const int xi = inverse_column(x);
        if (table_[d][xi] == g) table_[d][xi] = -1;
        const int mu = rep(g);
        const int nu = rep(d);
        if (table_[mu][x] >= 0) {
          merge(nu, table_[mu][x], queue);
        } else if (table_[nu][xi] >= 0) {
          merge(mu, table_[nu][xi], queue);
        } else {
          table_[mu][x] = nu;
          table_[nu][xi] = mu;
        }
      }
    }
  }

  CosetTable compress() {
    std::vector<int> index(table_.size(), -1);
    int n = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (live(static_cast<int>(c))) index[c] = n++;
    std::vector<std::vector<int>> action;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(static_cast<int>(c))) continue;
      std::vector<int> row(cols_);
      for (int x = 0; x < cols_; ++x) {
        const int t = table_[c][x];
        if (t < 0) throw Overflow("coset table incomplete");
        row[x] = index[rep(t)];
      }
      action.push_back(std::move(row));
    }
    return CosetTable(cols_ / 2, std::move(action));
  }

  int cols_;
  int max_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

}  // namespace

Presentation Presentation::parse(const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) throw ParseError("presentation: expected 'generators | relators'");
  Presentation p;
  for (const auto& g : split(text.substr(0, bar), ',')) {
    if (g.size() != 1 || !std::islower(static_cast<unsigned char>(g[0])))
      throw ParseError("presentation: generators are single lowercase letters");
    if (std::find(p.generators.begin(), p.generators.end(), g) != p.generators.end())
      throw ParseError("presentation: repeated generator");
    p.generators.push_back(g);
  }
  const std::string rels = trim(text.substr(bar + 1));
  if (!rels.empty()) {
    for (const auto& r : split(rels, ',')) {
      std::size_t pos = 0;
      p.relators.push_back(parse_relator(r, pos, p.generators, false));
    }
  }
  return p;
}

CosetTable::CosetTable(int generators, std::vector<std::vector<int>> action)
    : generators_(generators), action_(std::move(action)) {}

int CosetTable::apply(int c, int x) const {
  if (x == 0 || std::abs(x) > generators_) throw InvalidArgument("generator index out of range");
  return action_.at(c)[column(x)];
}

int CosetTable::apply_word(int c, const std::vector<int>& word) const {
  for (int x : word) c = apply(c, x);
  return c;
}

CosetTable coset_enumerate(const Presentation& p, int max_cosets) {
  if (max_cosets < 1) throw InvalidArgument("max_cosets must be positive");
  if (p.generators.empty()) return CosetTable(0, {{}});
  return Enumerator(p, max_cosets).run();
}

Presentation presentation_of(const FreeProduct& group, const Alphabet& alphabet,
                             const std::vector<std::vector<int>>& relators, std::vector<int>* generator_base) {
  Presentation p;
  std::vector<int> base;
  for (std::size_t i = 0; i < group.rank(); ++i) {
    const FactorGroup& g = group.factor(static_cast<int>(i));
    if (g.kind() != FactorKind::Finite) throw InvalidArgument("finite quotient needs finite factor groups");
    base.push_back(static_cast<int>(p.generators.size()));
    for (const auto& name : g.generator_names()) p.generators.push_back(std::to_string(i + 1) + ":" + name);
    // Cayley-table relations w_x s w_{xs}^-1 over every element x and defining generator s.
    const auto n = static_cast<int>(*g.order());
    for (int x = 0; x < n; ++x) {
      const Element ex{{x}};
      for (std::size_t k = 0; k < g.defining_generators().size(); ++k) {
        const Element y = g.multiply(ex, g.defining_generators()[k]);
        std::vector<int> w = g.spell(ex);
        w.push_back(static_cast<int>(k) + 1);
        const auto wy = g.spell(y);
        for (auto it = wy.rbegin(); it != wy.rend(); ++it) w.push_back(-*it);
        // Free reduction; trivial relations are dropped.
        std::vector<int> red;
        for (int t : w) {
          if (!red.empty() && red.back() == -t)
            red.pop_back();
          else
            red.push_back(t);
        }
        for (int& t : red) t += t > 0 ? base.back() : -base.back();
        if (!red.empty()) p.relators.push_back(std::move(red));
      }
    }
  }
  for (const auto& r : relators) {
    std::vector<int> w;
    for (int letter : r) {
      const auto s = spell_letter(group, alphabet, base, letter);
      w.insert(w.end(), s.begin(), s.end());
    }
    p.relators.push_back(std::move(w));
  }
  if (generator_base) *generator_base = base;
  return p;
}

std::vector<int> spell_letter(const FreeProduct& group, const Alphabet& alphabet, const std::vector<int>& generator_base,
                              int letter) {
  const Syllable& s = alphabet.letter(letter);
  std::vector<int> w = group.factor(s.factor).spell(s.element);
  for (int& t : w) t += t > 0 ? generator_base[s.factor] : -generator_base[s.factor];
  return w;
}

}  // namespace fpd
