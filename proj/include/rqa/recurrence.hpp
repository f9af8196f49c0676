#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rqa/embedding.hpp"

namespace rqa {

struct RecurrencePair {
  std::uint32_t i;
  std::uint32_t j;

  friend bool operator==(const RecurrencePair&, const RecurrencePair&) = default;
  friend auto operator<=>(const RecurrencePair&, const RecurrencePair&) = default;
};

/// Upper-triangle recurrent points (i < j) of an embedded series, kept in
/// lexicographic (i, j) order. The line of identity and the mirrored
/// lower triangle are implicit.
class RecurrencePairSet {
 public:
  RecurrencePairSet() = default;

  /// Validates, sorts and deduplicates. Throws EmbeddingError for pairs
  /// with i >= j or j >= rows.
  RecurrencePairSet(std::size_t rows, std::vector<RecurrencePair> pairs);

  /// Trusted construction from already sorted, unique, in-range pairs.
  static RecurrencePairSet from_sorted(std::size_t rows, std::vector<RecurrencePair> pairs);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  const std::vector<RecurrencePair>& pairs() const noexcept { return pairs_; }
  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }

  bool contains(std::size_t i, std::size_t j) const;

  /// Number of upper-triangle cells, rows * (rows - 1) / 2.
  std::uint64_t cell_count() const noexcept {
    return static_cast<std::uint64_t>(rows_) * (rows_ - (rows_ > 0)) / 2;
  }

  friend bool operator==(const RecurrencePairSet&, const RecurrencePairSet&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<RecurrencePair> pairs_;
};

/// All-pairs comparison, O(rows^2 m). Verification oracle.
RecurrencePairSet recurrence_set_naive(const EmbeddedSeries& es);

/// Groups rows by content in a hash index and emits every within-group
/// pair. Expected O(rows m + pairs) time and O(rows + pairs) memory.
RecurrencePairSet recurrence_set_grouped(const EmbeddedSeries& es);

/// Maximal run of consecutive recurrent points on diagonal offset j - i.
struct DiagonalLine {
  std::uint32_t offset;
  std::uint32_t start;
  std::uint32_t length;

  friend bool operator==(const DiagonalLine&, const DiagonalLine&) = default;
};

/// Streams every maximal line once, in no particular order. Each recurrent
/// point lies on exactly one line. Uses O(rows) scratch space.
template <typename F>
void for_each_diagonal_line(const RecurrencePairSet& pairs, F&& emit);

/// Lines ordered by (offset, start).
std::vector<DiagonalLine> extract_diagonal_lines(const RecurrencePairSet& pairs);

/// Square binary image of a recurrence plot, origin top-left.
class Bitmap {
 public:
  explicit Bitmap(std::size_t side) : side_(side), bits_(side * side, 0) {}

  std::size_t side() const noexcept { return side_; }
  bool get(std::size_t row, std::size_t col) const { return bits_.at(row * side_ + col) != 0; }
  void set(std::size_t row, std::size_t col, bool v = true) {
    bits_.at(row * side_ + col) = v ? 1 : 0;
  }
  std::size_t count_set() const noexcept;
  Bitmap transposed() const;

  /// Plain PBM (P1): header, then each row on its own line(s), wrapped at
  /// 70 characters, no separators between pixels.
  void write_pbm(std::ostream& out) const;

  friend bool operator==(const Bitmap&, const Bitmap&) = default;

 private:
  std::size_t side_;
  std::vector<std::uint8_t> bits_;
};

/// rows x rows image: line of identity plus both (i, j) and (j, i) per pair.
Bitmap recurrence_plot_bitmap(const RecurrencePairSet& pairs);

// --- implementation --------------------------------------------------------

template <typename F>
void for_each_diagonal_line(const RecurrencePairSet& pairs, F&& emit) {
  if (pairs.empty()) return;
  constexpr std::uint32_t kNone = UINT32_MAX;
  // Pairs arrive with i ascending, so along one offset the points come in
  // order and a run continues iff the previous point sits at i - 1.
  std::vector<std::uint32_t> last(pairs.rows(), kNone);
  std::vector<std::uint32_t> run(pairs.rows(), 0);
  for (const auto& p : pairs) {
    const std::uint32_t d = p.j - p.i;
    if (last[d] != kNone && last[d] + 1 == p.i) {
      ++run[d];
    } else {
      if (run[d] > 0) emit(DiagonalLine{d, last[d] + 1 - run[d], run[d]});
      run[d] = 1;
    }
    last[d] = p.i;
  }
  for (std::uint32_t d = 1; d < pairs.rows(); ++d) {
    if (run[d] > 0) emit(DiagonalLine{d, last[d] + 1 - run[d], run[d]});
  }
}

}  // namespace rqa
