#include "taskcode/universal.hpp"

#include "chunking.hpp"
#include "taskcode/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace taskcode {

std::size_t TypeDescriptor::n() const {
  std::size_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

BigInt TypeDescriptor::class_size() const { return multinomial(counts); }

BigInt multinomial(std::span<const std::size_t> counts) {
  // Product of binomials C(c_1 + ... + c_i, c_i), exact.
  BigInt result = 1;
  std::size_t total = 0;
  for (auto c : counts) {
    for (std::size_t j = 1; j <= c; ++j) {
      result *= total + j;
      result /= j;
    }
    total += c;
  }
  return result;
}

std::vector<TypeDescriptor> enumerate_types(int n, std::size_t alphabet_size) {
  if (n < 1) throw InvalidArgument("enumerate_types: n must be positive");
  if (alphabet_size == 0) throw InvalidArgument("enumerate_types: empty alphabet");
  const std::size_t un = static_cast<std::size_t>(n);
  check_cap(static_cast<long double>(multinomial(std::vector<std::size_t>{un, alphabet_size - 1})), "type enumeration");
  std::vector<TypeDescriptor> out;
  std::vector<std::size_t> counts(alphabet_size, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == alphabet_size) {
      counts[pos] = left;
      out.push_back(TypeDescriptor{counts});
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      counts[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, un);
  return out;
}

BigInt type_rank(std::span<const std::size_t> sequence, std::size_t alphabet_size) {
  std::vector<std::size_t> counts(alphabet_size, 0);
  for (auto s : sequence) {
    if (s >= alphabet_size) throw InvalidArgument("type_rank: symbol out of range");
    ++counts[s];
  }
  BigInt rank = 0;
  for (auto s : sequence) {
    for (std::size_t a = 0; a < s; ++a) {
      if (counts[a] == 0) continue;
      --counts[a];
      rank += multinomial(counts);
      ++counts[a];
    }
    --counts[s];
  }
  return rank;
}

std::vector<std::size_t> type_unrank(const TypeDescriptor& type, const BigInt& rank) {
  auto counts = type.counts;
  if (rank < 0 || rank >= multinomial(counts)) throw InvalidArgument("type_unrank: rank out of range");
  BigInt r = rank;
  const std::size_t n = type.n();
  std::vector<std::size_t> seq;
  seq.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < counts.size(); ++a) {
      if (counts[a] == 0) continue;
      --counts[a];
      const BigInt block = multinomial(counts);
      if (r < block) {
        seq.push_back(a);
        break;
      }
      r -= block;
      ++counts[a];
    }
  }
  return seq;
}

std::size_t BlockCodeParams::descriptions() const {
  if (n < 1) throw InvalidArgument("block length must be positive");
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw InvalidArgument("rate must be finite and nonnegative");
  const double e = static_cast<double>(n) * rate;
  if (e >= 62.0) return std::size_t{1} << 62;
  return static_cast<std::size_t>(std::floor(std::exp2(e)));
}

namespace {

BigInt chunk_cap(const BigInt& class_size, int n, double rate, double slack) {
  const long double scaled =
      static_cast<long double>(class_size) * std::exp2l(-static_cast<long double>(n) * (rate - slack));
  const long double c = std::ceil(scaled);
  if (c >= 1e30L) return class_size;
  BigInt cap(std::max<long double>(c, 1.0L));
  return cap > class_size ? class_size : cap;
}

struct Tally {
  std::vector<BigInt> caps;
  std::vector<std::size_t> chunks;
  BigInt total = 0;
};

Tally tally(const std::vector<BigInt>& sizes, int n, double rate, double slack) {
  Tally t;
  for (const auto& size : sizes) {
    t.caps.push_back(chunk_cap(size, n, rate, slack));
    const BigInt k = (size + t.caps.back() - 1) / t.caps.back();
    t.total += k;
    const BigInt sat = BigInt(std::size_t{1} << 62);
    t.chunks.push_back(static_cast<std::size_t>(k > sat ? sat : k));
  }
  return t;
}

}  // namespace

namespace detail {

ChunkPlan plan_chunks(const std::vector<BigInt>& sizes, int n, double rate, double max_slack, std::size_t budget,
                      bool tighten, const std::string& what) {
  auto pack = [](Tally&& t, double s) {
    return ChunkPlan{s, std::move(t.caps), std::move(t.chunks), static_cast<std::size_t>(t.total)};
  };
  Tally widest = tally(sizes, n, rate, max_slack);
  if (widest.total > budget) {
    throw InfeasibleError(what + ": needs " + widest.total.str() + " descriptions but floor(2^(nR)) = " +
                          std::to_string(budget) + " at n = " + std::to_string(n) + ", R = " + std::to_string(rate) +
                          "; raise R or n");
  }
  if (!tighten) return pack(std::move(widest), max_slack);
  Tally tight = tally(sizes, n, rate, 0.0);
  if (tight.total <= budget) return pack(std::move(tight), 0.0);
  // The chunk count is nonincreasing in the slack; bisect for the smallest that fits.
  double lo = 0.0, hi = max_slack;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (tally(sizes, n, rate, mid).total <= budget) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return pack(tally(sizes, n, rate, hi), hi);
}

}  // namespace detail

BigInt ClassChunks::chunk_size(std::size_t j) const {
  const BigInt base = class_size / chunks;
  const BigInt extra = class_size % chunks;
  return BigInt(j) < extra ? base + 1 : base;
}

std::size_t ClassChunks::chunk_of(const BigInt& rank) const {
  const BigInt base = class_size / chunks;
  const BigInt extra = class_size % chunks;
  const BigInt big = extra * (base + 1);
  if (rank < big) return static_cast<std::size_t>(rank / (base + 1));
  return static_cast<std::size_t>(extra + (rank - big) / base);
}

double universal_slack(int n, std::size_t alphabet_size) {
  return static_cast<double>(alphabet_size) * std::log2(n + 1.0) / n;
}

double universal_penalty(int n, std::size_t alphabet_size, double rho) {
  if (n < 1) throw InvalidArgument("n must be positive");
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  return (1.0 + (1.0 + 1.0 / rho) * static_cast<double>(alphabet_size) * std::log2(n + 1.0)) / n;
}

double universal_moment_bound(int n, double rate, double rho, const Pmf& p) {
  const double d = universal_penalty(n, p.size(), rho);
  return 1.0 + std::exp2(-n * rho * (rate - renyi_entropy(p, rho) - d));
}

double block_moment_lower_bound(int n, double rate, double rho, const Pmf& p) {
  const auto m = static_cast<double>(BlockCodeParams{n, rate}.descriptions());
  return std::exp2(rho * (n * renyi_entropy(p, rho) - std::log2(m)));
}

double universal_si_penalty(int n, std::size_t x_size, std::size_t y_size, double rho) {
  if (n < 1) throw InvalidArgument("n must be positive");
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  const double l = std::log2(n + 1.0);
  return (1.0 + (1.0 + 1.0 / rho) * static_cast<double>(x_size * y_size) * l + static_cast<double>(x_size) * l / rho) / n;
}

double universal_si_moment_bound(int n, double rate, double rho, const JointPmf& joint) {
  const double d = universal_si_penalty(n, joint.x_size(), joint.y_size(), rho);
  return 1.0 + std::exp2(-n * rho * (rate - conditional_renyi(joint, rho) - d));
}

UniversalCode::UniversalCode(BlockCodeParams params, Alphabet alphabet)
    : params_(params), alphabet_(std::move(alphabet)), m_(params.descriptions()) {
  if (alphabet_.is_power()) throw InvalidArgument("universal encoder: pass the single-letter alphabet");
  auto types = enumerate_types(params_.n, alphabet_.size());
  std::vector<BigInt> sizes;
  for (const auto& t : types) sizes.push_back(t.class_size());
  const auto plan = detail::plan_chunks(sizes, params_.n, params_.rate, universal_slack(params_.n, alphabet_.size()),
                                        m_, params_.slack == SlackPolicy::tightest, "universal encoder");
  slack_ = plan.slack;
  for (std::size_t i = 0; i < types.size(); ++i) {
    classes_.push_back(ClassChunks{std::move(types[i]), sizes[i], plan.caps[i], plan.chunks[i], used_});
    used_ += plan.chunks[i];
  }
}

std::size_t UniversalCode::describe(std::span<const std::size_t> sequence) const {
  if (sequence.size() != static_cast<std::size_t>(params_.n)) throw InvalidArgument("describe: wrong tuple length");
  TypeDescriptor t{std::vector<std::size_t>(alphabet_.size(), 0)};
  for (auto s : sequence) {
    if (s >= alphabet_.size()) throw InvalidArgument("describe: symbol out of range");
    ++t.counts[s];
  }
  const auto it = std::find_if(classes_.begin(), classes_.end(), [&](const ClassChunks& c) { return c.type == t; });
  return it->first_index + it->chunk_of(type_rank(sequence, alphabet_.size()));
}

double UniversalCode::moment(const Pmf& p, double rho) const {
  if (!(p.alphabet() == alphabet_)) throw InvalidArgument("moment: pmf alphabet differs from the encoder's");
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  long double total = 0.0L;
  for (const auto& c : classes_) {
    const double tp = tuple_probability(p, c.type.counts);
    if (tp == 0.0) continue;
    const BigInt base = c.class_size / c.chunks;
    const BigInt extra = c.class_size % c.chunks;
    const long double b = static_cast<long double>(base);
    long double s = static_cast<long double>(c.chunks - static_cast<std::size_t>(extra)) * std::pow(b, 1.0L + rho);
    if (extra > 0) s += static_cast<long double>(extra) * std::pow(b + 1.0L, 1.0L + rho);
    total += static_cast<long double>(tp) * s;
  }
  return static_cast<double>(total);
}

TaskEncoder UniversalCode::materialize() const {
  const Alphabet tuples = Alphabet::power(alphabet_, params_.n);
  const std::size_t k = alphabet_.size();
  const std::size_t radix = static_cast<std::size_t>(params_.n) + 1;
  std::unordered_map<std::size_t, std::size_t> class_of;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    std::size_t key = 0;
    for (std::size_t a = k; a-- > 0;) key = key * radix + classes_[i].type.counts[a];
    class_of.emplace(key, i);
  }
  // Within one type class, global lexicographic order is rank order.
  std::vector<std::size_t> next_rank(classes_.size(), 0);
  std::vector<std::size_t> assign(tuples.size());
  std::vector<std::size_t> digits(static_cast<std::size_t>(params_.n));
  std::vector<std::size_t> counts(k);
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    tuples.digits(i, digits);
    std::fill(counts.begin(), counts.end(), 0);
    for (auto d : digits) ++counts[d];
    std::size_t key = 0;
    for (std::size_t a = k; a-- > 0;) key = key * radix + counts[a];
    const std::size_t ci = class_of.at(key);
    const auto& c = classes_[ci];
    assign[i] = c.first_index + c.chunk_of(BigInt(next_rank[ci]++));
  }
  return TaskEncoder(tuples, m_, std::move(assign));
}

TaskEncoder build_universal_encoder(const BlockCodeParams& params, const Alphabet& alphabet) {
  return UniversalCode(params, alphabet).materialize();
}

SiTaskEncoder build_universal_si_encoder(const BlockCodeParams& params, const Alphabet& x_alphabet,
                                         const Alphabet& y_alphabet) {
  const std::size_t m = params.descriptions();
  if (x_alphabet.is_power() || y_alphabet.is_power()) {
    throw InvalidArgument("universal encoder: pass the single-letter alphabets");
  }
  const Alphabet xs = Alphabet::power(x_alphabet, params.n);
  const Alphabet ys = Alphabet::power(y_alphabet, params.n);
  check_cap(static_cast<long double>(xs.size()) * static_cast<long double>(ys.size()), "side-information encoder");
  const std::size_t kx = x_alphabet.size(), ky = y_alphabet.size();
  const double slack = static_cast<double>(kx * ky) * std::log2(params.n + 1.0) / params.n;
  const std::size_t un = static_cast<std::size_t>(params.n);

  std::vector<std::vector<std::size_t>> assign(ys.size(), std::vector<std::size_t>(xs.size()));
  std::vector<std::size_t> xd(un), yd(un);
  for (std::size_t yi = 0; yi < ys.size(); ++yi) {
    ys.digits(yi, yd);
    std::vector<std::size_t> y_counts(ky, 0);
    for (auto b : yd) ++y_counts[b];
    // Shells in order of first appearance; rank inside a shell = order of appearance.
    std::vector<std::vector<std::size_t>> shells;  // joint counts per shell
    std::vector<std::size_t> shell_of(xs.size());
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      xs.digits(xi, xd);
      std::vector<std::size_t> jc(kx * ky, 0);
      for (std::size_t t = 0; t < un; ++t) ++jc[yd[t] * kx + xd[t]];
      std::string key(reinterpret_cast<const char*>(jc.data()), jc.size() * sizeof(std::size_t));
      auto [it, fresh] = index.emplace(std::move(key), shells.size());
      if (fresh) shells.push_back(std::move(jc));
      shell_of[xi] = it->second;
    }
    std::vector<BigInt> sizes;
    for (const auto& jc : shells) {
      // |T_V(y^n)| = prod_b multinomial(N(., b))
      BigInt size = 1;
      for (std::size_t b = 0; b < ky; ++b) {
        size *= multinomial(std::span<const std::size_t>(jc.data() + b * kx, kx));
      }
      sizes.push_back(size);
    }
    const auto plan = detail::plan_chunks(sizes, params.n, params.rate, slack, m, params.slack == SlackPolicy::tightest,
                                         "side-information encoder");
    std::vector<ClassChunks> chunks;
    std::size_t used = 0;
    for (std::size_t i = 0; i < shells.size(); ++i) {
      chunks.push_back(ClassChunks{TypeDescriptor{shells[i]}, sizes[i], plan.caps[i], plan.chunks[i], used});
      used += plan.chunks[i];
    }
    std::vector<std::size_t> next(shells.size(), 0);
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      const auto& c = chunks[shell_of[xi]];
      assign[yi][xi] = c.first_index + c.chunk_of(BigInt(next[shell_of[xi]]++));
    }
  }
  return SiTaskEncoder(xs, ys, m, std::move(assign));
}

}  // namespace taskcode
