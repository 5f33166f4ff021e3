#pragma once

#include <string>
#include <vector>

#include "fpd/word.hpp"

namespace fpd {

/// A finite presentation. Relator letters are signed 1-based generator
/// indices (-k is the inverse of generator k).
struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;

  /// Parses "a,b | aaa, bbb, abab". Generators are single lowercase letters;
  /// an uppercase letter is the inverse; "(w)^n" repeats w.
  static Presentation parse(const std::string& text);
};

/// Action of the generators on the cosets of the trivial subgroup, so coset
/// c corresponds to a group element and c * x is right multiplication.
class CosetTable {
 public:
  CosetTable(int generators, std::vector<std::vector<int>> action);

  int generator_count() const { return generators_; }
  int coset_count() const { return static_cast<int>(action_.size()); }
  /// Image of coset c under the signed 1-based generator x.
  int apply(int c, int x) const;
  int apply_word(int c, const std::vector<int>& word) const;

 private:
  int generators_;
  std::vector<std::vector<int>> action_;
};

/// Todd-Coxeter enumeration over the trivial subgroup (HLT strategy with
/// coincidence processing). Throws Overflow once `max_cosets` cosets have
/// been defined.
CosetTable coset_enumerate(const Presentation& p, int max_cosets);

/// Presentation of G = (*G_i) / <<R>> from the defining generators of each
/// finite factor, its Cayley-table relations and the relators. Throws
/// InvalidArgument when a factor is infinite. `generator_base[i]` receives
/// the 0-based index of the first generator of factor i.
Presentation presentation_of(const FreeProduct& group, const Alphabet& alphabet,
                             const std::vector<std::vector<int>>& relators,
                             std::vector<int>* generator_base = nullptr);

/// Spells an alphabet letter in the presentation's generators.
std::vector<int> spell_letter(const FreeProduct& group, const Alphabet& alphabet, const std::vector<int>& generator_base,
                              int letter);

}  // namespace fpd
