#include "rqa/metrics.hpp"

#include <cmath>
#include <map>

#include "rqa/error.hpp"

namespace rqa {

namespace {

// Least-squares slope of y against d = 1..y.size().
double slope(const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  const double d_mean = (static_cast<double>(n) + 1.0) / 2.0;
  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = static_cast<double>(k + 1) - d_mean;
    sxy += dx * (y[k] - y_mean);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace

RqaMetrics compute_metrics(const RecurrencePairSet& pairs, const EmbeddingConfig& config,
                           const MetricsOptions& options) {
  config.validate();
  const std::size_t rows = pairs.rows();
  if (rows < 2) throw EmbeddingError("need at least 2 embedded rows for recurrence statistics");

  RqaMetrics m;
  m.recurrent_points = pairs.size();
  m.rec = 100.0 * static_cast<double>(m.recurrent_points) / static_cast<double>(pairs.cell_count());

  std::map<std::uint32_t, std::uint64_t> lengths;  // length -> number of lines, lengths >= lmin
  for_each_diagonal_line(pairs, [&](const DiagonalLine& line) {
    if (line.length >= config.lmin) {
      ++lengths[line.length];
      m.deterministic_points += line.length;
    }
  });

  if (m.recurrent_points > 0) {
    m.det = 100.0 * static_cast<double>(m.deterministic_points) /
            static_cast<double>(m.recurrent_points);
  }
  if (!lengths.empty()) {
    m.maxline = lengths.rbegin()->first;
    for (const auto& [len, count] : lengths) m.line_count += count;
    if (lengths.size() > 1) {
      const double total = static_cast<double>(m.line_count);
      for (const auto& [len, count] : lengths) {
        const double p = static_cast<double>(count) / total;
        m.entropy -= p * std::log2(p);
      }
    }
  }

  // Recurrence density per offset d = 1..rows-1.
  std::vector<double> density(rows - 1, 0.0);
  {
    std::vector<std::uint64_t> per_offset(rows, 0);
    for (const auto& p : pairs) ++per_offset[p.j - p.i];
    for (std::size_t d = 1; d < rows; ++d) {
      density[d - 1] = 100.0 * static_cast<double>(per_offset[d]) / static_cast<double>(rows - d);
    }
  }
  if (options.trend_exclude_tail) density.resize(density.size() - density.size() / 10);
  m.trend = 1000.0 * slope(density);
  return m;
}

RqaMetrics analyze_sequence(std::span<const Code> codes, const EmbeddingConfig& config,
                            const MetricsOptions& options) {
  const auto es = embed(codes, config);
  return compute_metrics(recurrence_set_grouped(es), config, options);
}

}  // namespace rqa
