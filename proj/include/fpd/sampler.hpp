#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fpd/rng.hpp"
#include "fpd/word.hpp"

namespace fpd {

using BigInt = boost::multiprecision::cpp_int;

/// Density as an exact fraction num/den in (0, 1).
struct Density {
  std::int64_t num = 1;
  std::int64_t den = 2;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// Accepts "p/q" or a decimal; decimals are converted to the nearest
  /// fraction with denominator <= 10^6.
  static Density parse(const std::string& text);
  static Density from_double(double d);
  std::string str() const;

  friend bool operator==(const Density&, const Density&) = default;
};

inline constexpr std::uint64_t kDefaultRelatorCap = std::uint64_t{1} << 24;

struct ModelParams {
  std::vector<FactorGroup> factors;
  Density density;
  int radius = 1;
  int length = 2;
  std::uint64_t seed = 0;
  std::uint64_t relator_cap = kDefaultRelatorCap;

  /// Throws InvalidArgument when the model is not defined for these values.
  void validate() const;
};

/// Transfer-matrix counts for cyclically reduced words. A[i][j] = b_j for
/// i != j, so trace(A^l) = |S_l|.
class TransferCounts {
 public:
  TransferCounts(std::vector<std::int64_t> ball_sizes, int length);

  const BigInt& total() const { return total_; }
  int length() const { return length_; }
  /// (A^k)[i][j].
  const BigInt& power_entry(int k, int i, int j) const { return powers_[k][i * n_ + j]; }

  /// Factor sequence of a uniformly random word of S_l, weighted by the
  /// number of words realising it.
  std::vector<int> sample_factor_cycle(Rng& rng) const;

 private:
  int n_;
  int length_;
  std::vector<std::int64_t> b_;
  std::vector<std::vector<BigInt>> powers_;
  BigInt total_;
  bool fits_u64_ = false;
  std::vector<std::vector<std::uint64_t>> powers_u64_;
};

/// Everything needed to sample relators for one parameter point.
class Model {
 public:
  explicit Model(ModelParams params);

  const ModelParams& params() const { return params_; }
  const FreeProduct& group() const { return group_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const TransferCounts& counts() const { return counts_; }

 private:
  ModelParams params_;
  FreeProduct group_;
  Alphabet alphabet_;
  TransferCounts counts_;
};

/// A relator as a sequence of alphabet letters.
using Relator = std::vector<int>;

/// |S_l| for the given parameters.
BigInt count_S(const ModelParams& params);

/// Exactly uniform element of S_l. Throws EmptySupport when S_l is empty.
Relator sample_uniform(const Model& model, Rng& rng);

/// The sequential syllable-by-syllable process. Throws DeadEnd when the last
/// choice set is empty.
Relator sample_process(const Model& model, Rng& rng);

/// Probability that sample_process emits `word` (0 if it cannot).
double process_probability(const Model& model, const Relator& word);

/// ceil(total^d), computed exactly.
BigInt relator_count(const BigInt& total, const Density& d);

enum class SamplerTag { ExactUniform, SequentialProcess };
std::string to_string(SamplerTag tag);
SamplerTag sampler_from_string(const std::string& s);

struct RelatorSet {
  std::vector<Relator> relators;
  ModelParams params;
  SamplerTag sampler = SamplerTag::ExactUniform;
  /// ceil(|S_l|^d) before the cap.
  BigInt requested;
  bool cap_exceeded = false;
};

RelatorSet sample_relator_set(const Model& model, Rng& rng, SamplerTag sampler = SamplerTag::ExactUniform);

/// Two relators w b and w b' with a common prefix w of length l-1.
struct PrefixCollision {
  Relator prefix;
  int first = 0;   // letter b
  int second = 0;  // letter b', first < second
};

std::vector<PrefixCollision> prefix_collisions(const std::vector<Relator>& relators);

enum class WitnessVerdict { Collapsed, Partial, None };
std::string to_string(WitnessVerdict v);

struct DihedralWitness {
  WitnessVerdict verdict = WitnessVerdict::None;
  /// Identifications achieved / identifications required.
  double fraction = 0.0;
  std::int64_t achieved = 0;
  std::int64_t required = 0;
};

DihedralWitness dihedral_witness(const Alphabet& alphabet, const std::vector<Relator>& relators);

/// Text serialisation with a header recording params and seed.
void write_relator_set(std::ostream& os, const RelatorSet& set, const Alphabet& alphabet);
RelatorSet read_relator_set(std::istream& is);

}  // namespace fpd
