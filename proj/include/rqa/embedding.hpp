#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rqa/alphabet.hpp"

namespace rqa {

/// Delay-embedding parameters. Recurrence is exact match (zero radius),
/// so there is no radius field.
struct EmbeddingConfig {
  std::size_t dimension = 3;  // m
  std::size_t delay = 1;      // tau
  std::size_t lmin = 2;       // shortest diagonal run counted as deterministic

  /// Throws EmbeddingError unless m >= 1, tau >= 1, lmin >= 2.
  void validate() const;

  /// Span covered by one row: (m - 1) * tau.
  std::size_t window() const noexcept { return (dimension - 1) * delay; }
};

/// View of a code sequence as overlapping rows
/// row(i) = (s[i], s[i + tau], ..., s[i + (m-1) tau]).
/// Holds a non-owning span; the codes must outlive it.
class EmbeddedSeries {
 public:
  EmbeddedSeries(std::span<const Code> codes, EmbeddingConfig config);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t source_length() const noexcept { return codes_.size(); }
  const EmbeddingConfig& config() const noexcept { return config_; }
  std::span<const Code> codes() const noexcept { return codes_; }

  Code at(std::size_t row, std::size_t component) const noexcept {
    return codes_[row + component * config_.delay];
  }
  std::vector<Code> row(std::size_t i) const;
  bool rows_equal(std::size_t i, std::size_t j) const noexcept;

 private:
  std::span<const Code> codes_;
  EmbeddingConfig config_;
  std::size_t rows_ = 0;
};

/// Requires N >= (m-1) tau + 2 so that at least two rows exist.
EmbeddedSeries embed(const SymbolSequence& seq, const EmbeddingConfig& config);
EmbeddedSeries embed(std::span<const Code> codes, const EmbeddingConfig& config);

}  // namespace rqa
