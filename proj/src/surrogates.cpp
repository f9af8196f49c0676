#include "rqa/surrogates.hpp"

#include <cmath>
#include <random>

#include "parallel.hpp"
#include "rqa/error.hpp"

namespace rqa {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform integer in [0, bound] by rejection (bound < 2^64 - 1).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t range = bound + 1;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range + 1) % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % range;
}

SurrogateStats summarize(std::vector<double> values) {
  SurrogateStats s;
  const auto n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  s.values = std::move(values);
  return s;
}

MetricSignificance assess(double observed, const SurrogateStats& stats) {
  MetricSignificance m;
  m.observed = observed;
  m.mean = stats.mean;
  m.sd = stats.sd;
  if (stats.sd > 0.0) m.z = (observed - stats.mean) / stats.sd;
  for (double v : stats.values) m.at_or_above += (v >= observed) ? 1 : 0;
  m.p_empirical = static_cast<double>(1 + m.at_or_above) /
                  static_cast<double>(stats.values.size() + 1);
  m.direction = observed > stats.mean   ? Direction::Above
                : observed < stats.mean ? Direction::Below
                                        : Direction::Equal;
  return m;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master + (index + 1) * kGolden);
}

std::uint64_t seed_for_source(std::uint64_t master, std::string_view source_id) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : source_id) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(master ^ splitmix64(h));
}

std::vector<Code> shuffle_codes(std::span<const Code> codes, std::uint64_t seed) {
  std::vector<Code> out(codes.begin(), codes.end());
  std::mt19937_64 rng(seed);
  for (std::size_t i = out.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(rng, i - 1));
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

SymbolSequence shuffle(const SymbolSequence& seq, std::uint64_t seed) {
  return SymbolSequence{shuffle_codes(seq.codes, seed), seq.alphabet, seq.source_id};
}

SurrogateSummary surrogate_distribution(std::span<const Code> codes, const EmbeddingConfig& config,
                                        std::size_t n, std::uint64_t seed, std::size_t workers) {
  if (n < 2) throw StatsError("need at least 2 surrogates");
  embed(codes, config);  // length check before spending any work

  std::vector<double> rec(n);
  std::vector<double> det(n);
  detail::parallel_for(n, workers, [&](std::size_t k) {
    const auto surrogate = shuffle_codes(codes, derive_seed(seed, k));
    const auto m = analyze_sequence(surrogate, config);
    rec[k] = m.rec;
    det[k] = m.det;
  });

  SurrogateSummary s;
  s.n = n;
  s.seed = seed;
  s.rec = summarize(std::move(rec));
  s.det = summarize(std::move(det));
  return s;
}

SurrogateSummary surrogate_distribution(const SymbolSequence& seq, const EmbeddingConfig& config,
                                        std::size_t n, std::uint64_t seed, std::size_t workers) {
  return surrogate_distribution(std::span<const Code>(seq.codes), config, n, seed, workers);
}

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::Above: return "above";
    case Direction::Below: return "below";
    case Direction::Equal: break;
  }
  return "equal";
}

SignificanceReport significance(const RqaMetrics& observed, const SurrogateSummary& summary) {
  if (summary.n < 2 || summary.rec.values.size() != summary.n ||
      summary.det.values.size() != summary.n) {
    throw StatsError("significance needs a summary with at least 2 surrogate values");
  }
  return SignificanceReport{summary.n, assess(observed.rec, summary.rec),
                            assess(observed.det, summary.det)};
}

}  // namespace rqa
