#include "fpd/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "fpd/error.hpp"

namespace fpd {

namespace {

BigInt uniform_below(const BigInt& n, Rng& rng) {
  const unsigned bits = boost::multiprecision::msb(n) + 1;
  const unsigned words = (bits + 63) / 64;
  for (;;) {
    BigInt x = 0;
    for (unsigned w = 0; w < words; ++w) {
      x <<= 64;
      x |= rng.next();
    }
    x >>= (words * 64 - bits);
    if (x < n) return x;
  }
}

long double log_of(const BigInt& x) {
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits < 60) return std::log(x.convert_to<long double>());
  const BigInt top = x >> (bits - 60);
  return std::log(top.convert_to<long double>()) + static_cast<long double>(bits - 60) * std::log(2.0L);
}

BigInt big_from_log(long double lg) {
  if (lg < 40.0L) return BigInt(static_cast<unsigned long long>(std::floor(std::exp(lg))));
  const long double ln2 = std::log(2.0L);
  const long shift = static_cast<long>(std::floor(lg / ln2)) - 60;
  const long double mant = std::exp(lg - static_cast<long double>(shift) * ln2);
  return BigInt(static_cast<unsigned long long>(mant)) << shift;
}

}  // namespace

Density Density::from_double(double d) {
  if (!(d > 0.0 && d < 1.0)) throw InvalidArgument("density must lie in (0,1)");
  // Continued-fraction convergents.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = d;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t h2 = ai * h1 + h0;
    const std::int64_t k2 = ai * k1 + k0;
    if (k2 > 1000000) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - d) < 1e-12) break;
    const double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return Density{h1, k1};
}

Density Density::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const std::int64_t p = std::stoll(text.substr(0, slash));
      const std::int64_t q = std::stoll(text.substr(slash + 1));
      if (p <= 0 || q <= 0 || p >= q) throw InvalidArgument("density must lie in (0,1): " + text);
      const std::int64_t g = std::gcd(p, q);
      return Density{p / g, q / g};
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ParseError("bad density '" + text + "'");
    return from_double(v);
  } catch (const std::logic_error&) {
    throw ParseError("bad density '" + text + "'");
  }
}

std::string Density::str() const { return std::to_string(num) + "/" + std::to_string(den); }

void ModelParams::validate() const {
  if (factors.size() < 2) throw InvalidArgument("the model needs n >= 2 factors");
  if (factors.size() == 2) {
    auto is_z2 = [](const FactorGroup& g) { return g.order() == 2; };
    if (is_z2(factors[0]) && is_z2(factors[1])) throw InvalidArgument("Z/2 * Z/2 is excluded (virtually cyclic)");
  }
  if (!(density.num > 0 && density.num < density.den)) throw InvalidArgument("density must lie in (0,1)");
  if (radius < 1) throw InvalidArgument("ball radius m must be >= 1");
  if (length < 2) throw InvalidArgument("syllable length must be >= 2");
  if (relator_cap < 1) throw InvalidArgument("relator cap must be >= 1");
}

TransferCounts::TransferCounts(std::vector<std::int64_t> ball_sizes, int length)
    : n_(static_cast<int>(ball_sizes.size())), length_(length), b_(std::move(ball_sizes)) {
  if (length_ < 1) throw InvalidArgument("length must be >= 1");
  const int n = n_;
  std::vector<BigInt> a(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) a[i * n + j] = b_[j];
  std::vector<BigInt> id(n * n, 0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1;
  powers_.push_back(std::move(id));
  for (int k = 1; k <= length_; ++k) {
    const auto& prev = powers_.back();
    std::vector<BigInt> next(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        BigInt s = 0;
        for (int t = 0; t < n; ++t) s += prev[i * n + t] * a[t * n + j];
        next[i * n + j] = std::move(s);
      }
    powers_.push_back(std::move(next));
  }
  total_ = 0;
  for (int i = 0; i < n; ++i) total_ += powers_[length_][i * n + i];

  const BigInt limit = BigInt(1) << 62;
  fits_u64_ = true;
  for (const auto& p : powers_)
    for (const auto& x : p)
      if (x >= limit) fits_u64_ = false;
  if (total_ >= limit) fits_u64_ = false;
  if (fits_u64_) {
    for (const auto& p : powers_) {
      std::vector<std::uint64_t> q;
      for (const auto& x : p) q.push_back(x.convert_to<std::uint64_t>());
      powers_u64_.push_back(std::move(q));
    }
  }
}

std::vector<int> TransferCounts::sample_factor_cycle(Rng& rng) const {
  if (total_ == 0) throw EmptySupport("no cyclically reduced words of this length");
  const int n = n_;
  std::vector<int> seq;
  seq.reserve(length_);
  if (fits_u64_) {
    const auto& top = powers_u64_[length_];
    std::uint64_t total = 0;
    for (int i = 0; i < n; ++i) total += top[i * n + i];
    std::uint64_t r = rng.below(total);
    int first = 0;
    for (; first < n; ++first) {
      if (r < top[first * n + first]) break;
      r -= top[first * n + first];
    }
    seq.push_back(first);
    int cur = first;
    for (int k = 1; k < length_; ++k) {
      const auto& rest = powers_u64_[length_ - k];
      std::uint64_t sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != cur) sum += static_cast<std::uint64_t>(b_[j]) * rest[j * n + first];
      std::uint64_t pick = rng.below(sum);
      int next = 0;
      for (; next < n; ++next) {
        if (next == cur) continue;
        const std::uint64_t w = static_cast<std::uint64_t>(b_[next]) * rest[next * n + first];
        if (pick < w) break;
        pick -= w;
      }
      seq.push_back(next);
      cur = next;
    }
    return seq;
  }
  BigInt r = uniform_below(total_, rng);
  int first = 0;
  for (; first < n; ++first) {
    const BigInt& w = powers_[length_][first * n + first];
    if (r < w) break;
    r -= w;
  }
  seq.push_back(first);
  int cur = first;
  for (int k = 1; k < length_; ++k) {
    BigInt sum = 0;
    for (int j = 0; j < n; ++j)
      if (j != cur) sum += b_[j] * powers_[length_ - k][j * n + first];
    BigInt pick = uniform_below(sum, rng);
    int next = 0;
    for (; next < n; ++next) {
      if (next == cur) continue;
      const BigInt w = b_[next] * powers_[length_ - k][next * n + first];
      if (pick < w) break;
      pick -= w;
    }
    seq.push_back(next);
    cur = next;
  }
  return seq;
}

Model::Model(ModelParams params)
    : params_((params.validate(), std::move(params))),
      group_(params_.factors),
      alphabet_(group_, params_.radius),
      counts_(alphabet_.ball_sizes(), params_.length) {}

BigInt count_S(const ModelParams& params) {
  params.validate();
  FreeProduct group(params.factors);
  Alphabet alphabet(group, params.radius);
  return TransferCounts(alphabet.ball_sizes(), params.length).total();
}

Relator sample_uniform(const Model& model, Rng& rng) {
  const auto cycle = model.counts().sample_factor_cycle(rng);
  const Alphabet& a = model.alphabet();
  Relator word;
  word.reserve(cycle.size());
  for (int f : cycle) word.push_back(a.begin(f) + static_cast<int>(rng.below(a.ball_size(f))));
  return word;
}

namespace {

// Letters outside `excluded` factors, in alphabet order.
int choice_count(const Alphabet& a, int ex1, int ex2) {
  int c = 0;
  for (int f = 0; f < static_cast<int>(a.factor_count()); ++f)
    if (f != ex1 && f != ex2) c += a.ball_size(f);
  return c;
}

int choose_letter(const Alphabet& a, int ex1, int ex2, Rng& rng) {
  const int count = choice_count(a, ex1, ex2);
  if (count == 0) throw DeadEnd("final syllable has an empty choice set");
  int pick = static_cast<int>(rng.below(count));
  for (int f = 0; f < static_cast<int>(a.factor_count()); ++f) {
    if (f == ex1 || f == ex2) continue;
    if (pick < a.ball_size(f)) return a.begin(f) + pick;
    pick -= a.ball_size(f);
  }
  return -1;
}

}  // namespace

Relator sample_process(const Model& model, Rng& rng) {
  const Alphabet& a = model.alphabet();
  const int length = model.params().length;
  Relator word;
  word.push_back(choose_letter(a, -1, -1, rng));
  for (int k = 1; k < length - 1; ++k) word.push_back(choose_letter(a, a.factor_of(word.back()), -1, rng));
  const int first = a.factor_of(word.front());
  const int prev = a.factor_of(word.back());
  word.push_back(choose_letter(a, first, prev, rng));
  return word;
}

double process_probability(const Model& model, const Relator& word) {
  const Alphabet& a = model.alphabet();
  const int length = model.params().length;
  if (static_cast<int>(word.size()) != length) return 0.0;
  double p = 1.0 / choice_count(a, -1, -1);
  for (int k = 1; k < length - 1; ++k) {
    if (a.factor_of(word[k]) == a.factor_of(word[k - 1])) return 0.0;
    p /= choice_count(a, a.factor_of(word[k - 1]), -1);
  }
  const int first = a.factor_of(word.front());
  const int prev = a.factor_of(word[length - 2]);
  const int last = a.factor_of(word.back());
  if (last == first || last == prev) return 0.0;
  return p / choice_count(a, first, prev);
}

BigInt relator_count(const BigInt& total, const Density& d) {
  if (total <= 0) return 0;
  if (total == 1) return 1;
  const BigInt target = boost::multiprecision::pow(total, static_cast<unsigned>(d.num));
  auto enough = [&](const BigInt& k) { return boost::multiprecision::pow(k, static_cast<unsigned>(d.den)) >= target; };
  const long double lg = log_of(total) * static_cast<long double>(d.num) / static_cast<long double>(d.den);
  const BigInt guess = big_from_log(lg);
  BigInt slack = guess / 1000000000 + 2;
  BigInt lo = guess > slack ? BigInt(guess - slack) : BigInt(0);
  BigInt hi = guess + slack;
  while (lo > 0 && enough(lo)) {
    slack *= 2;
    lo = lo > slack ? BigInt(lo - slack) : BigInt(0);
  }
  while (!enough(hi)) {
    slack *= 2;
    hi += slack;
  }
  // Invariant: !enough(lo) or lo == 0, enough(hi).
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    if (enough(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return (lo > 0 && enough(lo)) ? lo : hi;
}

std::string to_string(SamplerTag tag) { return tag == SamplerTag::ExactUniform ? "exact-uniform" : "sequential-process"; }

SamplerTag sampler_from_string(const std::string& s) {
  if (s == "exact-uniform") return SamplerTag::ExactUniform;
  if (s == "sequential-process") return SamplerTag::SequentialProcess;
  throw ParseError("unknown sampler '" + s + "'");
}

RelatorSet sample_relator_set(const Model& model, Rng& rng, SamplerTag sampler) {
  const BigInt& total = model.counts().total();
  if (total == 0) throw EmptySupport("no cyclically reduced words of length " + std::to_string(model.params().length));
  RelatorSet set;
  set.params = model.params();
  set.sampler = sampler;
  set.requested = relator_count(total, model.params().density);
  std::uint64_t count = model.params().relator_cap;
  if (set.requested > count) {
    set.cap_exceeded = true;
  } else {
    count = set.requested.convert_to<std::uint64_t>();
  }
  set.relators.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    set.relators.push_back(sampler == SamplerTag::ExactUniform ? sample_uniform(model, rng) : sample_process(model, rng));
  return set;
}

std::vector<PrefixCollision> prefix_collisions(const std::vector<Relator>& relators) {
  std::map<Relator, std::set<int>> endings;
  for (const auto& r : relators) {
    if (r.empty()) continue;
    endings[Relator(r.begin(), r.end() - 1)].insert(r.back());
  }
  std::vector<PrefixCollision> out;
  for (const auto& [prefix, lasts] : endings) {
    for (auto i = lasts.begin(); i != lasts.end(); ++i)
      for (auto j = std::next(i); j != lasts.end(); ++j) out.push_back(PrefixCollision{prefix, *i, *j});
  }
  return out;
}

std::string to_string(WitnessVerdict v) {
  switch (v) {
    case WitnessVerdict::Collapsed:
      return "collapsed";
    case WitnessVerdict::Partial:
      return "partial";
    case WitnessVerdict::None:
      return "none";
  }
  return "none";
}

DihedralWitness dihedral_witness(const Alphabet& alphabet, const std::vector<Relator>& relators) {
  const int size = alphabet.size();
  std::vector<int> parent(size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int classes = size;
  for (const auto& c : prefix_collisions(relators)) {
    const int x = find(c.first), y = find(c.second);
    if (x != y) {
      parent[std::max(x, y)] = std::min(x, y);
      --classes;
    }
  }
  const int n = static_cast<int>(alphabet.factor_count());
  // Each factor's ball must become one class; for n >= 3 everything merges.
  const int target = n >= 3 ? 1 : n;
  DihedralWitness w;
  w.required = size - target;
  w.achieved = size - classes;
  w.fraction = w.required > 0 ? static_cast<double>(w.achieved) / static_cast<double>(w.required) : 1.0;
  if (w.achieved == 0) {
    w.verdict = w.required == 0 ? WitnessVerdict::Collapsed : WitnessVerdict::None;
  } else if (w.achieved >= w.required) {
    w.verdict = WitnessVerdict::Collapsed;
  } else {
    w.verdict = WitnessVerdict::Partial;
  }
  return w;
}

void write_relator_set(std::ostream& os, const RelatorSet& set, const Alphabet& alphabet) {
  const ModelParams& p = set.params;
  os << "# fpd relator set v1\n";
  os << "factors";
  for (const auto& f : p.factors) {
    if (f.spec().empty()) throw InvalidArgument("factor without a spec string cannot be serialised");
    os << ' ' << f.spec();
  }
  os << "\ndensity " << p.density.str() << "\nradius " << p.radius << "\nlength " << p.length << "\nseed " << p.seed
     << "\ncap " << p.relator_cap << "\nsampler " << to_string(set.sampler) << "\nrequested " << set.requested
     << "\ncap_exceeded " << (set.cap_exceeded ? 1 : 0) << "\ncount " << set.relators.size() << "\nrelators\n";
  FreeProduct group(p.factors);
  for (const auto& r : set.relators) os << group.format(alphabet.to_word(r)) << '\n';
}

RelatorSet read_relator_set(std::istream& is) {
  RelatorSet set;
  std::string line;
  std::map<std::string, std::string> header;
  bool body = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line == "relators") {
      body = true;
      break;
    }
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw ParseError("bad header line '" + line + "'");
    header[line.substr(0, sp)] = line.substr(sp + 1);
  }
  if (!body) throw ParseError("missing 'relators' section");
  auto need = [&](const std::string& key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError("missing header key '" + key + "'");
    return it->second;
  };
  ModelParams& p = set.params;
  {
    std::istringstream fs(need("factors"));
    std::string spec;
    while (fs >> spec) p.factors.push_back(FactorGroup::parse_spec(spec));
  }
  try {
    p.density = Density::parse(need("density"));
    p.radius = std::stoi(need("radius"));
    p.length = std::stoi(need("length"));
    p.seed = std::stoull(need("seed"));
    p.relator_cap = std::stoull(need("cap"));
    set.sampler = sampler_from_string(need("sampler"));
    set.requested = BigInt(need("requested"));
    set.cap_exceeded = need("cap_exceeded") == "1";
  } catch (const std::logic_error&) {
    throw ParseError("bad numeric header value");
  }
  const std::size_t count = std::stoull(need("count"));
  p.validate();
  FreeProduct group(p.factors);
  Alphabet alphabet(group, p.radius);
  while (set.relators.size() < count && std::getline(is, line)) {
    if (line.empty()) continue;
    set.relators.push_back(alphabet.to_letters(group.parse(line)));
  }
  if (set.relators.size() != count) throw ParseError("relator count does not match header");
  return set;
}

}  // namespace fpd
