#include "rqa/embedding.hpp"

#include <string>

#include "rqa/error.hpp"

namespace rqa {

void EmbeddingConfig::validate() const {
  if (dimension < 1) throw EmbeddingError("embedding dimension must be >= 1");
  if (delay < 1) throw EmbeddingError("delay must be >= 1");
  if (lmin < 2) throw EmbeddingError("lmin must be >= 2");
}

EmbeddedSeries::EmbeddedSeries(std::span<const Code> codes, EmbeddingConfig config)
    : codes_(codes), config_(config) {
  config_.validate();
  const std::size_t need = config_.window() + 2;
  if (codes_.size() < need) {
    throw EmbeddingError("sequence too short to embed: " + std::to_string(codes_.size()) +
                         " letters, need at least " + std::to_string(need));
  }
  rows_ = codes_.size() - config_.window();
}

std::vector<Code> EmbeddedSeries::row(std::size_t i) const {
  std::vector<Code> out(config_.dimension);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = at(i, k);
  return out;
}

bool EmbeddedSeries::rows_equal(std::size_t i, std::size_t j) const noexcept {
  for (std::size_t k = 0; k < config_.dimension; ++k) {
    if (at(i, k) != at(j, k)) return false;
  }
  return true;
}

EmbeddedSeries embed(std::span<const Code> codes, const EmbeddingConfig& config) {
  return EmbeddedSeries(codes, config);
}

EmbeddedSeries embed(const SymbolSequence& seq, const EmbeddingConfig& config) {
  return EmbeddedSeries(std::span<const Code>(seq.codes), config);
}

}  // namespace rqa
