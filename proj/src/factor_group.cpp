#include "fpd/factor_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "fpd/error.hpp"

namespace fpd {

namespace {

std::vector<std::string> default_names(int count, std::vector<std::string> names) {
  static const char* kLetters = "abcdefghijklmnopqrstuvwxyz";
  for (int i = static_cast<int>(names.size()); i < count; ++i) {
    names.emplace_back(1, kLetters[i % 26]);
  }
  names.resize(count);
  return names;
}

}  // namespace

FactorGroup FactorGroup::cyclic(int order, std::string generator) {
  if (order < 2) throw InvalidArgument("cyclic factor must be nontrivial");
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) table[i][j] = (i + j) % order;
  FactorGroup g = from_table(std::move(table), {1}, {std::move(generator)});
  g.spec_ = "Z/" + std::to_string(order);
  return g;
}

FactorGroup FactorGroup::parse_spec(const std::string& spec) {
  auto number = [&](const std::string& text) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(text, &used);
      if (used == text.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw ParseError("bad factor spec '" + spec + "'");
  };
  if (spec == "Z") return free(1);
  if (spec.rfind("Z/", 0) == 0) return cyclic(number(spec.substr(2)));
  if (spec.rfind("Z^", 0) == 0) return free_abelian(number(spec.substr(2)));
  if (spec.rfind("F", 0) == 0) return free(number(spec.substr(1)));
  throw ParseError("unknown factor spec '" + spec + "'");
}

FactorGroup FactorGroup::from_permutations(const std::vector<std::vector<int>>& generators,
                                           std::vector<std::string> names) {
  if (generators.empty()) throw InvalidArgument("need at least one generator");
  const std::size_t degree = generators.front().size();
  std::vector<int> id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<int>(i);
  for (const auto& g : generators) {
    if (g.size() != degree) throw InvalidArgument("permutation degrees differ");
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != id) throw InvalidArgument("not a permutation");
  }
  // Left-to-right composition: (p*q)(x) = q(p(x)).
  auto compose = [](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[x] = q[p[x]];
    return r;
  };
  std::vector<std::vector<int>> elements{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : generators) {
      auto next = compose(elements[i], g);
      if (index.emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(std::move(next));
        if (elements.size() > (1u << 16)) throw ResourceLimit("permutation group too large");
      }
    }
  }
  const std::size_t n = elements.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = index.at(compose(elements[i], elements[j]));
  std::vector<int> gens;
  for (const auto& g : generators) gens.push_back(index.at(g));
  return from_table(std::move(table), std::move(gens), std::move(names));
}

FactorGroup FactorGroup::from_table(std::vector<std::vector<int>> table, std::vector<int> generators,
                                    std::vector<std::string> names) {
  const int n = static_cast<int>(table.size());
  if (n < 2) throw InvalidArgument("factor group must be nontrivial");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != n) throw InvalidArgument("table is not square");
  for (int i = 0; i < n; ++i)
    if (table[0][i] != i || table[i][0] != i) throw InvalidArgument("index 0 must be the identity");

  FactorGroup g;
  g.kind_ = FactorKind::Finite;
  g.rank_ = static_cast<int>(generators.size());
  g.inverse_.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (table[i][j] == 0) g.inverse_[i] = j;
  for (int i = 0; i < n; ++i)
    if (g.inverse_[i] < 0) throw InvalidArgument("table has an element without inverse");
  g.table_ = std::move(table);
  for (int gen : generators) {
    if (gen <= 0 || gen >= n) throw InvalidArgument("generator index out of range");
    g.defining_.push_back(Element{{gen}});
  }
  g.names_ = default_names(g.rank_, std::move(names));

  // Shortest spellings by BFS over the defining generators and inverses.
  g.spelling_.assign(n, {});
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int k = 0; k < g.rank_; ++k) {
      for (int sign : {1, -1}) {
        const int s = sign > 0 ? generators[k] : g.inverse_[generators[k]];
        const int y = g.table_[x][s];
        if (seen[y]) continue;
        seen[y] = true;
        g.spelling_[y] = g.spelling_[x];
        g.spelling_[y].push_back(sign * (k + 1));
        queue.push_back(y);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw InvalidArgument("generators do not generate the table group");
  g.symmetrise();
  return g;
}

FactorGroup FactorGroup::free(int rank, std::vector<std::string> names) {
  if (rank < 1) throw InvalidArgument("free factor needs rank >= 1");
  FactorGroup g;
  g.kind_ = FactorKind::Free;
  g.rank_ = rank;
  for (int k = 1; k <= rank; ++k) g.defining_.push_back(Element{{k}});
  g.names_ = default_names(rank, std::move(names));
  g.spec_ = rank == 1 ? "Z" : "F" + std::to_string(rank);
  g.symmetrise();
  return g;
}

FactorGroup FactorGroup::free_abelian(int rank, std::vector<std::string> names) {
  if (rank < 1) throw InvalidArgument("free abelian factor needs rank >= 1");
  FactorGroup g;
  g.kind_ = FactorKind::FreeAbelian;
  g.rank_ = rank;
  for (int k = 0; k < rank; ++k) {
    Element e{std::vector<std::int32_t>(rank, 0)};
    e.repr[k] = 1;
    g.defining_.push_back(std::move(e));
  }
  g.names_ = default_names(rank, std::move(names));
  g.spec_ = "Z^" + std::to_string(rank);
  g.symmetrise();
  return g;
}

void FactorGroup::symmetrise() {
  std::set<Element> gens;
  for (const auto& d : defining_) {
    if (!is_identity(d)) gens.insert(d);
    const Element inv = inverse(d);
    if (!is_identity(inv)) gens.insert(inv);
  }
  generators_.assign(gens.begin(), gens.end());
}

std::optional<std::int64_t> FactorGroup::order() const {
  if (kind_ == FactorKind::Finite) return static_cast<std::int64_t>(table_.size());
  return std::nullopt;
}

Element FactorGroup::identity() const {
  switch (kind_) {
    case FactorKind::Finite:
      return Element{{0}};
    case FactorKind::Free:
      return Element{};
    case FactorKind::FreeAbelian:
      return Element{std::vector<std::int32_t>(rank_, 0)};
  }
  return Element{};
}

Element FactorGroup::multiply(const Element& a, const Element& b) const {
  switch (kind_) {
    case FactorKind::Finite:
      return Element{{table_[a.repr[0]][b.repr[0]]}};
    case FactorKind::Free: {
      std::vector<std::int32_t> w = a.repr;
      for (std::int32_t x : b.repr) {
        if (!w.empty() && w.back() == -x) {
          w.pop_back();
        } else {
          w.push_back(x);
        }
      }
      return Element{std::move(w)};
    }
    case FactorKind::FreeAbelian: {
      Element r = a;
      for (int k = 0; k < rank_; ++k) r.repr[k] += b.repr[k];
      return r;
    }
  }
  return Element{};
}

Element FactorGroup::inverse(const Element& a) const {
  switch (kind_) {
    case FactorKind::Finite:
      return Element{{inverse_[a.repr[0]]}};
    case FactorKind::Free: {
      Element r;
      for (auto it = a.repr.rbegin(); it != a.repr.rend(); ++it) r.repr.push_back(-*it);
      return r;
    }
    case FactorKind::FreeAbelian: {
      Element r = a;
      for (auto& x : r.repr) x = -x;
      return r;
    }
  }
  return Element{};
}

Element FactorGroup::power(const Element& a, std::int64_t k) const {
  Element base = k < 0 ? inverse(a) : a;
  if (k < 0) k = -k;
  Element r = identity();
  while (k > 0) {
    if (k & 1) r = multiply(r, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return r;
}

std::vector<int> FactorGroup::spell(const Element& a) const {
  switch (kind_) {
    case FactorKind::Finite:
      return spelling_[a.repr[0]];
    case FactorKind::Free:
      return {a.repr.begin(), a.repr.end()};
    case FactorKind::FreeAbelian: {
      std::vector<int> w;
      for (int k = 0; k < rank_; ++k) {
        const int sign = a.repr[k] < 0 ? -1 : 1;
        for (int t = 0; t < std::abs(a.repr[k]); ++t) w.push_back(sign * (k + 1));
      }
      return w;
    }
  }
  return {};
}

std::vector<Element> FactorGroup::ball(int radius, std::size_t cap) const {
  if (radius < 1) throw InvalidArgument("ball radius must be >= 1");
  std::vector<Element> out;
  std::set<Element> seen{identity()};
  std::vector<Element> frontier{identity()};
  for (int r = 1; r <= radius && !frontier.empty(); ++r) {
    std::set<Element> next;
    for (const auto& x : frontier)
      for (const auto& s : generators_) {
        Element y = multiply(x, s);
        if (!seen.contains(y)) next.insert(std::move(y));
      }
    for (const auto& y : next) {
      seen.insert(y);
      out.push_back(y);
      if (out.size() > cap) throw ResourceLimit("ball of radius " + std::to_string(radius) + " exceeds cap");
    }
    frontier.assign(next.begin(), next.end());
  }
  return out;
}

std::int64_t FactorGroup::word_length(const Element& a) const {
  switch (kind_) {
    case FactorKind::Finite:
      return static_cast<std::int64_t>(spelling_[a.repr[0]].size());
    case FactorKind::Free:
      return static_cast<std::int64_t>(a.repr.size());
    case FactorKind::FreeAbelian: {
      std::int64_t s = 0;
      for (auto x : a.repr) s += std::abs(x);
      return s;
    }
  }
  return 0;
}

std::string FactorGroup::format(const Element& a) const {
  std::ostringstream os;
  switch (kind_) {
    case FactorKind::Finite:
      os << a.repr[0];
      break;
    case FactorKind::Free:
    case FactorKind::FreeAbelian:
      if (a.repr.empty()) return "e";
      for (std::size_t i = 0; i < a.repr.size(); ++i) os << (i ? "," : "") << a.repr[i];
      break;
  }
  return os.str();
}

Element FactorGroup::parse(const std::string& token) const {
  auto fail = [&] { return ParseError("bad element token '" + token + "' for " + describe()); };
  std::vector<std::int32_t> values;
  if (!(kind_ == FactorKind::Free && token == "e")) {
    std::istringstream is(token);
    std::string part;
    while (std::getline(is, part, ',')) {
      try {
        std::size_t used = 0;
        const long v = std::stol(part, &used);
        if (used != part.size()) throw fail();
        values.push_back(static_cast<std::int32_t>(v));
      } catch (const std::logic_error&) {
        throw fail();
      }
    }
  }
  switch (kind_) {
    case FactorKind::Finite:
      if (values.size() != 1 || values[0] < 0 || values[0] >= static_cast<int>(table_.size())) throw fail();
      return Element{values};
    case FactorKind::Free: {
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0 || std::abs(values[i]) > rank_) throw fail();
        if (i > 0 && values[i] == -values[i - 1]) throw fail();
      }
      return Element{values};
    }
    case FactorKind::FreeAbelian:
      if (values.size() != static_cast<std::size_t>(rank_)) throw fail();
      return Element{values};
  }
  throw fail();
}

std::string FactorGroup::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case FactorKind::Finite:
      os << "finite(order=" << table_.size() << ")";
      break;
    case FactorKind::Free:
      os << "free(rank=" << rank_ << ")";
      break;
    case FactorKind::FreeAbelian:
      os << "free_abelian(rank=" << rank_ << ")";
      break;
  }
  os << "<";
  for (std::size_t i = 0; i < names_.size(); ++i) os << (i ? "," : "") << names_[i];
  os << ">";
  return os.str();
}

}  // namespace fpd
