#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "fpd/error.hpp"
#include "fpd/sampler.hpp"

using namespace fpd;

namespace {

ModelParams params(std::vector<FactorGroup> factors, int length, Density d = {1, 2}, int radius = 1) {
  ModelParams p;
  p.factors = std::move(factors);
  p.length = length;
  p.density = d;
  p.radius = radius;
  return p;
}

ModelParams fixture_a(int length, Density d = {1, 2}) {
  return params({FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")}, length, d);
}

ModelParams fixture_b(int length) {
  return params({FactorGroup::cyclic(2), FactorGroup::cyclic(2), FactorGroup::cyclic(2)}, length);
}

// Exhaustive list of cyclically reduced letter words of the given length.
std::vector<Relator> enumerate_S(const Alphabet& a, int length) {
  std::vector<Relator> out;
  Relator cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == length) {
      if (a.factor_of(cur.front()) != a.factor_of(cur.back())) out.push_back(cur);
      return;
    }
    for (int x = 0; x < a.size(); ++x) {
      if (!cur.empty() && a.factor_of(cur.back()) == a.factor_of(x)) continue;
      cur.push_back(x);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

double chi_square_p(const std::map<Relator, long>& counts, std::size_t cells, long draws) {
  const double expected = static_cast<double>(draws) / static_cast<double>(cells);
  double stat = 0;
  std::size_t seen = 0;
  for (const auto& [w, c] : counts) {
    stat += (c - expected) * (c - expected) / expected;
    ++seen;
  }
  stat += static_cast<double>(cells - seen) * expected;
  boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

TEST(CountS, Examples) {
  EXPECT_EQ(count_S(fixture_b(3)), 6);
  EXPECT_EQ(count_S(fixture_a(4)), 32);
  EXPECT_EQ(count_S(fixture_a(5)), 0);
}

TEST(CountS, MatchesBruteForce) {
  const std::vector<ModelParams> cases = {
      fixture_a(2), fixture_a(4), fixture_a(6), fixture_b(3), fixture_b(5), fixture_b(6),
      params({FactorGroup::cyclic(2), FactorGroup::cyclic(3), FactorGroup::cyclic(5)}, 4),
      params({FactorGroup::cyclic(2), FactorGroup::cyclic(3), FactorGroup::cyclic(5)}, 5),
      params({FactorGroup::free(1), FactorGroup::cyclic(4)}, 4, {1, 2}, 2),
  };
  for (const auto& p : cases) {
    const Model model(p);
    const auto all = enumerate_S(model.alphabet(), p.length);
    EXPECT_EQ(count_S(p), BigInt(all.size())) << "length " << p.length;
  }
}

TEST(CountS, LargeLengthIsExact) {
  // Two factors with b=2 alternate, so |S_l| = 2 * 2^l for even l.
  EXPECT_EQ(count_S(fixture_a(30)), BigInt(1) << 31);
  EXPECT_EQ(count_S(fixture_a(200)), BigInt(1) << 201);
}

TEST(ModelParams, Validation) {
  EXPECT_THROW(params({FactorGroup::cyclic(2), FactorGroup::cyclic(2)}, 4).validate(), InvalidArgument);
  EXPECT_THROW(params({FactorGroup::cyclic(3)}, 4).validate(), InvalidArgument);
  EXPECT_THROW(fixture_a(1).validate(), InvalidArgument);
  EXPECT_THROW(fixture_a(4, {1, 1}).validate(), InvalidArgument);
  EXPECT_NO_THROW(fixture_a(4).validate());
}

TEST(Density, Parse) {
  EXPECT_EQ(Density::parse("3/5"), (Density{3, 5}));
  EXPECT_EQ(Density::parse("6/10"), (Density{3, 5}));
  EXPECT_EQ(Density::parse("0.6"), (Density{3, 5}));
  EXPECT_EQ(Density::parse("0.0625"), (Density{1, 16}));
  EXPECT_THROW(Density::parse("x"), ParseError);
  EXPECT_THROW(Density::parse("1.5"), InvalidArgument);
}

TEST(SampleUniform, ChiSquareOnFixtureA) {
  const Model model(fixture_a(4));
  const auto all = enumerate_S(model.alphabet(), 4);
  ASSERT_EQ(all.size(), 32u);
  const std::set<Relator> support(all.begin(), all.end());
  Rng rng(2024);
  std::map<Relator, long> counts;
  const long draws = 100000;
  for (long i = 0; i < draws; ++i) {
    const auto r = sample_uniform(model, rng);
    ASSERT_TRUE(support.count(r));
    ++counts[r];
  }
  EXPECT_GT(chi_square_p(counts, all.size(), draws), 0.01);
}

TEST(SampleUniform, ChiSquareWithUnequalBalls) {
  // Several independent streams; a correct sampler fails p > 0.01 on each with
  // probability 0.01, so at most one failure out of five is tolerated.
  const Model model(params({FactorGroup::cyclic(2), FactorGroup::cyclic(3), FactorGroup::cyclic(5)}, 4, {1, 2}, 2));
  const auto all = enumerate_S(model.alphabet(), 4);
  const std::set<Relator> support(all.begin(), all.end());
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    std::map<Relator, long> counts;
    const long draws = 100000;
    for (long i = 0; i < draws; ++i) {
      const auto r = sample_uniform(model, rng);
      ASSERT_TRUE(support.count(r));
      ++counts[r];
    }
    if (chi_square_p(counts, all.size(), draws) <= 0.01) ++failures;
  }
  EXPECT_LE(failures, 1);
}

TEST(SampleUniform, BigIntegerPathStaysInSupport) {
  const Model model(params({FactorGroup::cyclic(3), FactorGroup::cyclic(5), FactorGroup::cyclic(7)}, 60));
  ASSERT_GT(model.counts().total(), BigInt(1) << 64);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto r = sample_uniform(model, rng);
    ASSERT_EQ(r.size(), 60u);
    ASSERT_TRUE(model.alphabet().to_word(r).is_cyclically_reduced());
  }
}

TEST(SampleUniform, EmptySupport) {
  const Model model(fixture_a(5));
  Rng rng(1);
  EXPECT_THROW(sample_uniform(model, rng), EmptySupport);
  EXPECT_THROW(sample_relator_set(model, rng), EmptySupport);
}

TEST(SampleUniform, Deterministic) {
  const Model model(fixture_b(7));
  Rng r1(77), r2(77);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sample_uniform(model, r1), sample_uniform(model, r2));
}

TEST(SampleProcess, UniformOnFixtureB) {
  const Model model(fixture_b(3));
  Rng rng(3);
  std::map<Relator, long> counts;
  const long draws = 60000;
  for (long i = 0; i < draws; ++i) ++counts[sample_process(model, rng)];
  ASSERT_EQ(counts.size(), 6u);
  const double mean = draws / 6.0, sigma = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
  for (const auto& [w, c] : counts) EXPECT_LT(std::fabs(c - mean), 3 * sigma);
}

TEST(SampleProcess, EvenLengthTwoFactorsTerminates) {
  const Model model(fixture_a(4));
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_process(model, rng).size(), 4u);
}

TEST(SampleProcess, DeadEndForOddTwoFactor) {
  const Model model(fixture_a(5));
  Rng rng(8);
  EXPECT_THROW(sample_process(model, rng), DeadEnd);
}

TEST(SampleProcess, ProbabilitiesMatchBruteForceTrajectory) {
  // Oracle: probability of each word computed by simulating the choice sets
  // directly from the definition.
  const Model model(params({FactorGroup::cyclic(2), FactorGroup::cyclic(3), FactorGroup::cyclic(5)}, 4, {1, 2}, 2));
  const Alphabet& a = model.alphabet();
  const std::vector<int> b = {1, 2, 4};
  const auto all = enumerate_S(a, 4);
  double total = 0, tv = 0;
  for (const auto& w : all) {
    double p = 1.0 / 7;
    p /= 7 - b[a.factor_of(w[0])];
    p /= 7 - b[a.factor_of(w[1])];
    const int f1 = a.factor_of(w[0]), f3 = a.factor_of(w[2]);
    p /= 7 - b[f1] - (f3 != f1 ? b[f3] : 0);
    EXPECT_NEAR(process_probability(model, w), p, 1e-12);
    total += p;
    tv += std::fabs(p - 1.0 / all.size());
  }
  // Process 3.1 also emits words whose last factor equals the first only if
  // excluded; every emitted word is in S_4, so the mass sums to at most 1.
  EXPECT_LE(total, 1.0 + 1e-12);
  EXPECT_GT(tv / 2, 0.01);  // not uniform when ball sizes differ
}

TEST(RelatorCount, Examples) {
  EXPECT_EQ(relator_count(32, {1, 2}), 6);
  EXPECT_EQ(relator_count(BigInt(1) << 31, {3, 5}), 397337);
  EXPECT_EQ(relator_count(1000, {1, 1000}), 2);
  EXPECT_EQ(relator_count(1, {1, 1000}), 1);
  EXPECT_EQ(relator_count(16, {1, 2}), 4);
  EXPECT_EQ(relator_count(17, {1, 2}), 5);
}

TEST(RelatorCount, MatchesFloatingPointAwayFromIntegers) {
  for (long s = 2; s < 5000; s += 37) {
    for (const Density d : {Density{1, 3}, Density{2, 5}, Density{3, 4}}) {
      const double x = std::pow(static_cast<double>(s), d.value());
      if (std::fabs(x - std::round(x)) < 1e-6) continue;
      EXPECT_EQ(relator_count(s, d), BigInt(static_cast<long>(std::ceil(x)))) << s << " " << d.str();
    }
  }
}

TEST(RelatorSet, SizesAndInvariants) {
  const Model model(fixture_a(4));
  Rng rng(10);
  const auto set = sample_relator_set(model, rng);
  EXPECT_EQ(set.relators.size(), 6u);
  EXPECT_FALSE(set.cap_exceeded);
  for (const auto& r : set.relators) {
    const auto w = model.alphabet().to_word(r);
    EXPECT_EQ(w.length(), 4u);
    EXPECT_TRUE(w.is_cyclically_reduced());
  }
}

TEST(RelatorSet, CapIsFlagged) {
  auto p = fixture_a(30, {3, 5});
  p.relator_cap = 1000;
  const Model model(p);
  Rng rng(1);
  const auto set = sample_relator_set(model, rng);
  EXPECT_TRUE(set.cap_exceeded);
  EXPECT_EQ(set.relators.size(), 1000u);
  EXPECT_EQ(set.requested, 397337);
}

TEST(RelatorSet, SerialisationRoundTrip) {
  auto p = params({FactorGroup::free(1), FactorGroup::cyclic(4), FactorGroup::free_abelian(2)}, 7, {2, 5}, 2);
  p.seed = 123;
  const Model model(p);
  Rng rng(p.seed);
  const auto set = sample_relator_set(model, rng, SamplerTag::SequentialProcess);
  std::ostringstream out;
  write_relator_set(out, set, model.alphabet());
  std::istringstream in(out.str());
  const auto back = read_relator_set(in);
  EXPECT_EQ(back.relators, set.relators);
  EXPECT_EQ(back.params.seed, 123u);
  EXPECT_EQ(back.params.density, p.density);
  EXPECT_EQ(back.sampler, SamplerTag::SequentialProcess);
  std::ostringstream again;
  write_relator_set(again, back, model.alphabet());
  EXPECT_EQ(again.str(), out.str());
}

TEST(PrefixCollisions, Examples) {
  const Model model(fixture_a(4));
  const Alphabet& a = model.alphabet();
  const auto& g = model.group();
  const auto r1 = a.to_letters(g.parse("1:1 2:1 1:1 2:1"));
  const auto r2 = a.to_letters(g.parse("1:1 2:1 1:1 2:2"));
  const auto c = prefix_collisions({r1, r2});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].prefix, Relator(r1.begin(), r1.end() - 1));
  EXPECT_EQ(std::set<int>({c[0].first, c[0].second}), std::set<int>({r1.back(), r2.back()}));
  EXPECT_TRUE(prefix_collisions({r1}).empty());
}

TEST(PrefixCollisions, MatchesPairwiseOracle) {
  const Model model(fixture_b(4));
  Rng rng(31);
  std::vector<Relator> rs;
  for (int i = 0; i < 300; ++i) rs.push_back(sample_uniform(model, rng));
  std::set<std::tuple<Relator, int, int>> oracle;
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < rs.size(); ++j) {
      if (!std::equal(rs[i].begin(), rs[i].end() - 1, rs[j].begin()) || rs[i].back() >= rs[j].back()) continue;
      oracle.emplace(Relator(rs[i].begin(), rs[i].end() - 1), rs[i].back(), rs[j].back());
    }
  std::set<std::tuple<Relator, int, int>> got;
  for (const auto& c : prefix_collisions(rs)) got.emplace(c.prefix, c.first, c.second);
  EXPECT_EQ(got, oracle);
}

TEST(PrefixCollisions, TwoFactorPairsShareAFactor) {
  const Model model(fixture_a(8, {3, 5}));
  Rng rng(4);
  const auto set = sample_relator_set(model, rng);
  for (const auto& c : prefix_collisions(set.relators))
    EXPECT_EQ(model.alphabet().factor_of(c.first), model.alphabet().factor_of(c.second));
}

TEST(DihedralWitness, Examples) {
  const Model model(fixture_a(4));
  const Alphabet& a = model.alphabet();
  const auto& g = model.group();
  auto L = [&](const char* s) { return a.to_letters(g.parse(s)); };
  const std::vector<Relator> rs = {L("1:1 2:1 1:1 2:1"), L("1:1 2:1 1:1 2:2"), L("2:1 1:1 2:1 1:1"),
                                   L("2:1 1:1 2:1 1:2")};
  EXPECT_EQ(dihedral_witness(a, rs).verdict, WitnessVerdict::Collapsed);
  EXPECT_EQ(dihedral_witness(a, {rs[0], rs[1]}).verdict, WitnessVerdict::Partial);
  EXPECT_DOUBLE_EQ(dihedral_witness(a, {rs[0], rs[1]}).fraction, 0.5);
  EXPECT_EQ(dihedral_witness(a, {}).verdict, WitnessVerdict::None);
}
