#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fpd/factor_group.hpp"

namespace fpd {

/// One free-product letter: a nontrivial element of factor `factor` (0-based).
struct Syllable {
  int factor = 0;
  Element element;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A word in free-product normal form: adjacent syllables lie in distinct
/// factors. The empty word is the identity.
struct FreeProductWord {
  std::vector<Syllable> syllables;

  std::size_t length() const { return syllables.size(); }
  bool empty() const { return syllables.empty(); }
  /// First and last syllables in distinct factors (vacuous for length <= 1).
  bool is_cyclically_reduced() const;
  bool is_normal_form() const;

  friend auto operator<=>(const FreeProductWord&, const FreeProductWord&) = default;
  friend bool operator==(const FreeProductWord&, const FreeProductWord&) = default;
};

/// Normal-form arithmetic in G_1 * ... * G_n.
class FreeProduct {
 public:
  explicit FreeProduct(std::vector<FactorGroup> factors);

  const std::vector<FactorGroup>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  const FactorGroup& factor(int i) const { return factors_.at(i); }

  FreeProductWord multiply(const FreeProductWord& a, const FreeProductWord& b) const;
  FreeProductWord inverse(const FreeProductWord& w) const;
  /// A cyclically reduced conjugate of w. Idempotent.
  FreeProductWord cyclic_reduce(const FreeProductWord& w) const;
  /// All cyclic shifts of w and of w^-1, deduplicated, in sorted order.
  std::vector<FreeProductWord> cyclic_variants(const FreeProductWord& w) const;

  /// Validates factor indices, nontriviality and normal form.
  void check(const FreeProductWord& w) const;

  /// "factor:element" tokens separated by spaces, factors 1-based.
  std::string format(const FreeProductWord& w) const;
  FreeProductWord parse(const std::string& text) const;

 private:
  std::vector<FactorGroup> factors_;
};

/// The relator alphabet: the union of the balls B_i(m), each letter an index.
/// Letters of factor i occupy a contiguous range, in ball order.
class Alphabet {
 public:
  Alphabet(const FreeProduct& group, int radius, std::size_t ball_cap = 1u << 20);

  int size() const { return static_cast<int>(letters_.size()); }
  int radius() const { return radius_; }
  std::size_t factor_count() const { return begin_.size(); }
  const Syllable& letter(int id) const { return letters_.at(id); }
  int factor_of(int id) const { return letters_[id].factor; }
  int inverse(int id) const { return inverse_[id]; }
  /// b_i = |B_i(m)|.
  int ball_size(int factor) const { return end_[factor] - begin_[factor]; }
  int begin(int factor) const { return begin_[factor]; }
  int end(int factor) const { return end_[factor]; }
  std::vector<std::int64_t> ball_sizes() const;
  /// Letter id of a syllable; -1 if it lies outside the balls.
  int find(const Syllable& s) const;

  FreeProductWord to_word(const std::vector<int>& letters) const;
  std::vector<int> to_letters(const FreeProductWord& w) const;

 private:
  std::vector<Syllable> letters_;
  std::vector<int> inverse_;
  std::vector<int> begin_, end_;
  std::map<Syllable, int> index_;
  int radius_;
};

}  // namespace fpd
