#include "taskcode/lossy.hpp"

#include "chunking.hpp"
#include "taskcode/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace taskcode {

double tuple_distortion(const Distortion& dist, const Alphabet& source, std::size_t x, const Alphabet& reproduction,
                        std::size_t xhat) {
  const auto a = source.digits(x);
  const auto b = reproduction.digits(xhat);
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += dist(a[i], b[i]);
  return total;
}

namespace {

// Members of T_Q as indices into X^n, in lexicographic order.
std::vector<std::size_t> class_members(const TypeDescriptor& type, const Alphabet& tuples) {
  std::vector<std::size_t> out;
  std::vector<std::size_t> d(static_cast<std::size_t>(tuples.tuple_length()));
  std::vector<std::size_t> counts(type.counts.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    tuples.digits(i, d);
    std::fill(counts.begin(), counts.end(), 0);
    for (auto s : d) ++counts[s];
    if (counts == type.counts) out.push_back(i);
  }
  return out;
}

// Per-letter distortion table digits for all tuples, flattened.
std::vector<std::size_t> all_digits(const Alphabet& tuples) {
  const std::size_t n = static_cast<std::size_t>(tuples.tuple_length());
  std::vector<std::size_t> out(tuples.size() * n);
  for (std::size_t i = 0; i < tuples.size(); ++i) tuples.digits(i, std::span<std::size_t>(out.data() + i * n, n));
  return out;
}

struct CoverContext {
  Alphabet source;
  Alphabet reproduction;
  std::vector<std::size_t> src_digits;
  std::vector<std::size_t> rep_digits;
  std::size_t n;
  double threshold;  // n D plus rounding room
  const Distortion* dist;

  bool close(std::size_t x, std::size_t xh) const {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += (*dist)(src_digits[x * n + i], rep_digits[xh * n + i]);
      if (total > threshold) return false;
    }
    return true;
  }
};

CoverContext make_context(int n, const Distortion& dist, double level) {
  if (n < 1) throw InvalidArgument("block length must be positive");
  if (!(level >= 0.0)) throw InvalidArgument("distortion level must be nonnegative");
  if (dist.x_alphabet().is_power() || dist.xhat_alphabet().is_power()) {
    throw InvalidArgument("lossy coder: distortion must be single-letter");
  }
  Alphabet src = Alphabet::power(dist.x_alphabet(), n);
  Alphabet rep = Alphabet::power(dist.xhat_alphabet(), n);
  check_cap(static_cast<long double>(src.size()), "source tuples");
  check_cap(static_cast<long double>(rep.size()), "reproduction tuples");
  CoverContext c{src, rep, all_digits(src), all_digits(rep), static_cast<std::size_t>(n), n * level + 1e-9, &dist};
  return c;
}

std::vector<std::size_t> greedy_cover(const CoverContext& ctx, const std::vector<std::size_t>& members) {
  // covers[c] = member positions within distortion of candidate c
  std::vector<std::vector<std::size_t>> covers(ctx.reproduction.size());
  std::vector<std::vector<std::size_t>> covered_by(members.size());
  for (std::size_t c = 0; c < ctx.reproduction.size(); ++c) {
    for (std::size_t m = 0; m < members.size(); ++m) {
      if (ctx.close(members[m], c)) {
        covers[c].push_back(m);
        covered_by[m].push_back(c);
      }
    }
  }
  std::vector<std::size_t> gain(covers.size());
  for (std::size_t c = 0; c < covers.size(); ++c) gain[c] = covers[c].size();
  std::vector<char> done(members.size(), 0);
  std::size_t left = members.size();
  std::vector<std::size_t> picked;
  while (left > 0) {
    const auto best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
    if (gain[best] == 0) throw NumericFailure("greedy cover: some source tuple has no codeword within distortion");
    picked.push_back(best);
    for (auto m : covers[best]) {
      if (done[m]) continue;
      done[m] = 1;
      --left;
      for (auto c : covered_by[m]) --gain[c];
    }
  }
  return picked;
}

}  // namespace

std::vector<std::size_t> greedy_type_cover(const TypeDescriptor& type, const Distortion& dist, double level) {
  if (type.counts.size() != dist.x_size()) throw InvalidArgument("greedy_type_cover: type and distortion alphabets differ");
  const auto ctx = make_context(static_cast<int>(type.n()), dist, level);
  return greedy_cover(ctx, class_members(type, ctx.source));
}

LossyCodec build_lossy_codec(int n, double rate, const Distortion& dist, double level) {
  const BlockCodeParams params{n, rate};
  const std::size_t m = params.descriptions();
  const auto ctx = make_context(n, dist, level);
  const auto types = enumerate_types(n, dist.x_size());

  // Members of every class in one pass over X^n.
  std::map<std::vector<std::size_t>, std::size_t> type_index;
  for (std::size_t t = 0; t < types.size(); ++t) type_index.emplace(types[t].counts, t);
  std::vector<std::vector<std::size_t>> members(types.size());
  std::vector<std::size_t> type_of(ctx.source.size());
  {
    std::vector<std::size_t> counts(dist.x_size());
    for (std::size_t i = 0; i < ctx.source.size(); ++i) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t k = 0; k < ctx.n; ++k) ++counts[ctx.src_digits[i * ctx.n + k]];
      type_of[i] = type_index.at(counts);
      members[type_of[i]].push_back(i);
    }
  }

  std::vector<std::vector<std::size_t>> covers(types.size());
  std::vector<BigInt> sizes;
  for (std::size_t t = 0; t < types.size(); ++t) {
    covers[t] = greedy_cover(ctx, members[t]);
    std::sort(covers[t].begin(), covers[t].end());
    sizes.emplace_back(covers[t].size());
  }
  const auto plan = detail::plan_chunks(sizes, n, rate, universal_slack(n, dist.x_size()), m, true, "lossy codec");

  // Chunk j of type t holds a contiguous run of the sorted cover.
  std::vector<std::vector<std::size_t>> chunks;
  std::vector<std::size_t> first_chunk(types.size());
  for (std::size_t t = 0; t < types.size(); ++t) {
    first_chunk[t] = chunks.size();
    const std::size_t total = covers[t].size(), k = plan.chunks[t];
    const std::size_t base = total / k, extra = total % k;
    std::size_t pos = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t len = base + (j < extra ? 1 : 0);
      chunks.emplace_back(covers[t].begin() + static_cast<std::ptrdiff_t>(pos),
                          covers[t].begin() + static_cast<std::ptrdiff_t>(pos + len));
      pos += len;
    }
  }

  auto chunk_has_close = [&](std::size_t chunk, std::size_t x) {
    return std::any_of(chunks[chunk].begin(), chunks[chunk].end(), [&](std::size_t c) { return ctx.close(x, c); });
  };
  // Lowest chunk of the source's own cover with a close codeword.
  std::vector<std::size_t> f(ctx.source.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    const std::size_t t = type_of[x];
    std::size_t j = first_chunk[t];
    while (!chunk_has_close(j, x)) ++j;
    f[x] = j;
  }

  // A codeword in several chunks stays only in the smallest (ties: lowest index).
  std::vector<std::vector<std::size_t>> holders(ctx.reproduction.size());
  for (std::size_t j = 0; j < chunks.size(); ++j) {
    for (auto c : chunks[j]) holders[c].push_back(j);
  }
  bool shared = false;
  for (std::size_t c = 0; c < holders.size(); ++c) {
    if (holders[c].size() < 2) continue;
    shared = true;
    std::size_t keep = holders[c][0];
    for (auto j : holders[c]) {
      if (chunks[j].size() < chunks[keep].size()) keep = j;
    }
    for (auto j : holders[c]) {
      if (j == keep) continue;
      chunks[j].erase(std::find(chunks[j].begin(), chunks[j].end(), c));
    }
  }
  if (shared) {
    // Sources whose chunk lost every close codeword move to the smallest chunk that has one.
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (chunk_has_close(f[x], x)) continue;
      std::size_t best = chunks.size();
      for (std::size_t c = 0; c < ctx.reproduction.size(); ++c) {
        if (holders[c].empty() || !ctx.close(x, c)) continue;
        for (auto j : holders[c]) {
          if (std::find(chunks[j].begin(), chunks[j].end(), c) == chunks[j].end()) continue;
          if (best == chunks.size() || chunks[j].size() < chunks[best].size() ||
              (chunks[j].size() == chunks[best].size() && j < best)) {
            best = j;
          }
        }
      }
      f[x] = best;
    }
  }

  // Drop chunks nobody uses and renumber in order.
  std::vector<char> used(chunks.size(), 0);
  for (auto j : f) used[j] = 1;
  std::vector<std::size_t> renumber(chunks.size());
  std::vector<std::vector<std::size_t>> phi;
  for (std::size_t j = 0; j < chunks.size(); ++j) {
    if (!used[j]) continue;
    renumber[j] = phi.size();
    phi.push_back(std::move(chunks[j]));
  }
  for (auto& j : f) j = renumber[j];
  return LossyCodec{n, m, ctx.source, ctx.reproduction, std::move(f), std::move(phi), plan.slack};
}

double lossy_moment(const LossyCodec& codec, const Pmf& p, double rho) {
  if (!(p.alphabet() == codec.source.base())) throw InvalidArgument("lossy_moment: pmf alphabet differs from the codec's");
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  std::vector<double> mass(codec.phi.size(), 0.0);
  std::vector<std::size_t> d(static_cast<std::size_t>(codec.n));
  std::vector<std::size_t> counts(p.size());
  for (std::size_t x = 0; x < codec.f.size(); ++x) {
    codec.source.digits(x, d);
    std::fill(counts.begin(), counts.end(), 0);
    for (auto s : d) ++counts[s];
    mass[codec.f[x]] += tuple_probability(p, counts);
  }
  double total = 0.0;
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (mass[j] > 0.0) total += mass[j] * std::pow(static_cast<double>(codec.phi[j].size()), rho);
  }
  return total;
}

double codec_worst_distortion(const LossyCodec& codec, const Distortion& dist) {
  double worst = 0.0;
  for (std::size_t x = 0; x < codec.f.size(); ++x) {
    double best = kInfinity;
    for (auto c : codec.phi[codec.f[x]]) {
      best = std::min(best, tuple_distortion(dist, codec.source, x, codec.reproduction, c));
    }
    worst = std::max(worst, best / codec.n);
  }
  return worst;
}

}  // namespace taskcode
