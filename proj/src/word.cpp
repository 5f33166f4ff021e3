#include "fpd/word.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fpd/error.hpp"

namespace fpd {

bool FreeProductWord::is_normal_form() const {
  for (std::size_t i = 1; i < syllables.size(); ++i)
    if (syllables[i].factor == syllables[i - 1].factor) return false;
  return true;
}

bool FreeProductWord::is_cyclically_reduced() const {
  if (!is_normal_form()) return false;
  return syllables.size() <= 1 || syllables.front().factor != syllables.back().factor;
}

FreeProduct::FreeProduct(std::vector<FactorGroup> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("free product needs at least one factor");
}

void FreeProduct::check(const FreeProductWord& w) const {
  for (const auto& s : w.syllables) {
    if (s.factor < 0 || s.factor >= static_cast<int>(factors_.size()))
      throw InvalidArgument("syllable factor out of range");
    if (factors_[s.factor].is_identity(s.element)) throw InvalidArgument("trivial syllable");
  }
  if (!w.is_normal_form()) throw InvalidArgument("word is not in normal form");
}

FreeProductWord FreeProduct::multiply(const FreeProductWord& a, const FreeProductWord& b) const {
  FreeProductWord out = a;
  for (const auto& s : b.syllables) {
    if (!out.syllables.empty() && out.syllables.back().factor == s.factor) {
      const FactorGroup& g = factors_[s.factor];
      Element merged = g.multiply(out.syllables.back().element, s.element);
      if (g.is_identity(merged)) {
        out.syllables.pop_back();
      } else {
        out.syllables.back().element = std::move(merged);
      }
    } else {
      out.syllables.push_back(s);
    }
  }
  return out;
}

FreeProductWord FreeProduct::inverse(const FreeProductWord& w) const {
  FreeProductWord out;
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
    out.syllables.push_back(Syllable{it->factor, factors_[it->factor].inverse(it->element)});
  return out;
}

FreeProductWord FreeProduct::cyclic_reduce(const FreeProductWord& w) const {
  FreeProductWord cur = w;
  // Conjugating by the last syllable merges it into the first one.
  while (cur.syllables.size() >= 2 && cur.syllables.front().factor == cur.syllables.back().factor) {
    Syllable last = cur.syllables.back();
    cur.syllables.pop_back();
    cur = multiply(FreeProductWord{{last}}, cur);
  }
  return cur;
}

std::vector<FreeProductWord> FreeProduct::cyclic_variants(const FreeProductWord& w) const {
  std::set<FreeProductWord> out;
  for (const FreeProductWord& base : {w, inverse(w)}) {
    const std::size_t n = base.syllables.size();
    if (n == 0) {
      out.insert(base);
      continue;
    }
    for (std::size_t s = 0; s < n; ++s) {
      FreeProductWord v;
      for (std::size_t i = 0; i < n; ++i) v.syllables.push_back(base.syllables[(s + i) % n]);
      out.insert(std::move(v));
    }
  }
  return {out.begin(), out.end()};
}

std::string FreeProduct::format(const FreeProductWord& w) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.syllables.size(); ++i) {
    const auto& s = w.syllables[i];
    os << (i ? " " : "") << (s.factor + 1) << ':' << factors_[s.factor].format(s.element);
  }
  return os.str();
}

FreeProductWord FreeProduct::parse(const std::string& text) const {
  FreeProductWord w;
  std::istringstream is(text);
  std::string token;
  while (is >> token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) throw ParseError("syllable token without ':' in '" + token + "'");
    int factor = 0;
    try {
      factor = std::stoi(token.substr(0, colon)) - 1;
    } catch (const std::logic_error&) {
      throw ParseError("bad factor index in '" + token + "'");
    }
    if (factor < 0 || factor >= static_cast<int>(factors_.size()))
      throw ParseError("factor index out of range in '" + token + "'");
    w.syllables.push_back(Syllable{factor, factors_[factor].parse(token.substr(colon + 1))});
  }
  check(w);
  return w;
}

Alphabet::Alphabet(const FreeProduct& group, int radius, std::size_t ball_cap) : radius_(radius) {
  for (std::size_t i = 0; i < group.rank(); ++i) {
    const FactorGroup& g = group.factor(static_cast<int>(i));
    begin_.push_back(static_cast<int>(letters_.size()));
    for (auto& e : g.ball(radius, ball_cap)) letters_.push_back(Syllable{static_cast<int>(i), std::move(e)});
    end_.push_back(static_cast<int>(letters_.size()));
  }
  for (int id = 0; id < size(); ++id) index_.emplace(letters_[id], id);
  inverse_.resize(letters_.size());
  for (int id = 0; id < size(); ++id) {
    const auto& s = letters_[id];
    inverse_[id] = index_.at(Syllable{s.factor, group.factor(s.factor).inverse(s.element)});
  }
}

std::vector<std::int64_t> Alphabet::ball_sizes() const {
  std::vector<std::int64_t> b;
  for (std::size_t i = 0; i < begin_.size(); ++i) b.push_back(end_[i] - begin_[i]);
  return b;
}

int Alphabet::find(const Syllable& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

FreeProductWord Alphabet::to_word(const std::vector<int>& letters) const {
  FreeProductWord w;
  for (int id : letters) w.syllables.push_back(letters_.at(id));
  return w;
}

std::vector<int> Alphabet::to_letters(const FreeProductWord& w) const {
  std::vector<int> out;
  for (const auto& s : w.syllables) {
    const int id = find(s);
    if (id < 0) throw InvalidArgument("syllable outside the alphabet balls");
    out.push_back(id);
  }
  return out;
}

}  // namespace fpd
