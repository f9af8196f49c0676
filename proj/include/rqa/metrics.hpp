#pragma once

#include <cstddef>
#include <cstdint>

#include "rqa/embedding.hpp"
#include "rqa/recurrence.hpp"

namespace rqa {

struct RqaMetrics {
  double rec = 0.0;          // % of upper-triangle cells that recur
  double det = 0.0;          // % of recurrent points on lines >= lmin
  std::uint32_t maxline = 0; // longest line >= lmin, else 0
  double entropy = 0.0;      // Shannon entropy (bits) of line lengths >= lmin
  double trend = 0.0;        // slope of density vs offset, % per 1000 epochs

  std::uint64_t recurrent_points = 0;
  std::uint64_t deterministic_points = 0;
  std::uint64_t line_count = 0;  // lines with length >= lmin

  friend bool operator==(const RqaMetrics&, const RqaMetrics&) = default;
};

struct MetricsOptions {
  /// Drop the last 10% of offsets (the sparse corner) from the TREND fit.
  bool trend_exclude_tail = false;
};

/// Throws EmbeddingError when fewer than two rows exist or lmin < 2.
RqaMetrics compute_metrics(const RecurrencePairSet& pairs, const EmbeddingConfig& config,
                           const MetricsOptions& options = {});

/// embed + grouped recurrence + metrics.
RqaMetrics analyze_sequence(std::span<const Code> codes, const EmbeddingConfig& config,
                            const MetricsOptions& options = {});

}  // namespace rqa
