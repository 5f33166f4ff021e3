#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fpd {

/// Canonical form of a factor-group element. Equal elements have equal
/// representations: a table index for finite groups, a freely reduced word of
/// signed 1-based generator indices for free groups, and an exponent vector
/// for free abelian groups.
struct Element {
  std::vector<std::int32_t> repr;

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;
};

enum class FactorKind { Finite, Free, FreeAbelian };

/// A factor group with a decidable word problem and a symmetric generating set.
class FactorGroup {
 public:
  /// Z/n with one generator.
  static FactorGroup cyclic(int order, std::string generator = "a");
  /// Finite group generated by permutations of {0..degree-1}.
  static FactorGroup from_permutations(const std::vector<std::vector<int>>& generators,
                                       std::vector<std::string> names = {});
  /// Finite group given by a multiplication table (row/col 0 is the identity)
  /// and the table indices of its generators.
  static FactorGroup from_table(std::vector<std::vector<int>> table, std::vector<int> generators,
                                std::vector<std::string> names = {});
  static FactorGroup free(int rank, std::vector<std::string> names = {});
  static FactorGroup free_abelian(int rank, std::vector<std::string> names = {});
  /// Parses "Z/n", "Z" (free rank 1), "F<k>" or "Z^k".
  static FactorGroup parse_spec(const std::string& spec);

  /// Spec string this group can be rebuilt from (empty for table groups).
  const std::string& spec() const { return spec_; }

  FactorKind kind() const { return kind_; }
  int rank() const { return rank_; }
  /// Order for finite groups.
  std::optional<std::int64_t> order() const;

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  Element power(const Element& a, std::int64_t k) const;
  bool is_identity(const Element& a) const { return a == identity(); }

  /// Symmetric generating set (closed under inverses, identity removed).
  const std::vector<Element>& generators() const { return generators_; }
  /// Names of the defining generators, one per defining generator.
  const std::vector<std::string>& generator_names() const { return names_; }
  /// The defining generators as elements (not symmetrised).
  const std::vector<Element>& defining_generators() const { return defining_; }

  /// A word in the defining generators spelling `a`, as signed 1-based
  /// generator indices. Shortest for finite groups.
  std::vector<int> spell(const Element& a) const;

  /// Elements at word distance 1..radius from the identity, in BFS order
  /// (ties broken by canonical order). Throws ResourceLimit past `cap`.
  std::vector<Element> ball(int radius, std::size_t cap = 1u << 20) const;

  /// Translation length of `a` on the standard line for Z (free rank 1 or
  /// free abelian rank 1); word length otherwise.
  std::int64_t word_length(const Element& a) const;

  std::string format(const Element& a) const;
  Element parse(const std::string& token) const;

  /// Human-readable description, e.g. "Z/3<a>".
  std::string describe() const;

  /// Multiplication table for finite groups (empty otherwise).
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  FactorGroup() = default;
  void symmetrise();

  FactorKind kind_ = FactorKind::Finite;
  std::string spec_;
  int rank_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<Element> defining_;
  std::vector<Element> generators_;
  std::vector<std::string> names_;
  // Shortest spelling of each finite element.
  std::vector<std::vector<int>> spelling_;
};

}  // namespace fpd
