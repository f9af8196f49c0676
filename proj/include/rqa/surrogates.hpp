#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rqa/alphabet.hpp"
#include "rqa/embedding.hpp"
#include "rqa/metrics.hpp"

namespace rqa {

/// Name of the pseudo-random engine behind every shuffle, recorded in reports.
inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Seed of the index-th child stream of `master` (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Seed for one text, from the run's master seed and the text's id. Independent
/// of where the text appears in the input list.
std::uint64_t seed_for_source(std::uint64_t master, std::string_view source_id) noexcept;

/// Fisher-Yates permutation driven by mt19937_64 with a portable unbiased
/// bounded draw, so results are identical across standard libraries.
std::vector<Code> shuffle_codes(std::span<const Code> codes, std::uint64_t seed);
SymbolSequence shuffle(const SymbolSequence& seq, std::uint64_t seed);

struct SurrogateStats {
  double mean = 0.0;
  double sd = 0.0;  // sample sd, n - 1 denominator
  std::vector<double> values;
};

struct SurrogateSummary {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string generator{kGeneratorName};
  SurrogateStats rec;
  SurrogateStats det;
};

/// n shuffles with seeds derive_seed(seed, 0..n-1), metrics for each.
/// `workers` > 1 evaluates surrogates concurrently; the result does not
/// depend on it. Throws EmbeddingError if the sequence is too short.
SurrogateSummary surrogate_distribution(std::span<const Code> codes, const EmbeddingConfig& config,
                                        std::size_t n, std::uint64_t seed,
                                        std::size_t workers = 1);
SurrogateSummary surrogate_distribution(const SymbolSequence& seq, const EmbeddingConfig& config,
                                        std::size_t n, std::uint64_t seed,
                                        std::size_t workers = 1);

enum class Direction { Above, Equal, Below };
std::string_view to_string(Direction d) noexcept;

struct MetricSignificance {
  double observed = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  std::optional<double> z;       // empty when sd == 0
  std::size_t at_or_above = 0;   // surrogates >= observed
  double p_empirical = 1.0;      // (1 + at_or_above) / (n + 1)
  Direction direction = Direction::Equal;  // observed relative to surrogate mean
};

struct SignificanceReport {
  std::size_t n = 0;
  MetricSignificance rec;
  MetricSignificance det;
};

/// One-sided test: structure shows up as more recurrence than the shuffles.
/// Throws StatsError if the summary has fewer than 2 surrogates.
SignificanceReport significance(const RqaMetrics& observed, const SurrogateSummary& summary);

}  // namespace rqa
