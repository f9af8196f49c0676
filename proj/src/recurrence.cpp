#include "rqa/recurrence.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>

#include "rqa/error.hpp"

namespace rqa {

namespace {

void check_index_range(std::size_t rows) {
  if (rows > std::numeric_limits<std::uint32_t>::max()) {
    throw EmbeddingError("series too long for 32-bit row indices");
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

RecurrencePairSet::RecurrencePairSet(std::size_t rows, std::vector<RecurrencePair> pairs)
    : rows_(rows), pairs_(std::move(pairs)) {
  check_index_range(rows_);
  for (const auto& p : pairs_) {
    if (p.i >= p.j || p.j >= rows_) {
      throw EmbeddingError("invalid recurrence pair (" + std::to_string(p.i) + ", " +
                           std::to_string(p.j) + ") for " + std::to_string(rows_) + " rows");
    }
  }
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

RecurrencePairSet RecurrencePairSet::from_sorted(std::size_t rows,
                                                 std::vector<RecurrencePair> pairs) {
  RecurrencePairSet out;
  out.rows_ = rows;
  out.pairs_ = std::move(pairs);
  return out;
}

bool RecurrencePairSet::contains(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= rows_) return false;
  const RecurrencePair key{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
  return std::binary_search(pairs_.begin(), pairs_.end(), key);
}

RecurrencePairSet recurrence_set_naive(const EmbeddedSeries& es) {
  const std::size_t n = es.rows();
  check_index_range(n);
  std::vector<RecurrencePair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (es.rows_equal(i, j)) {
        pairs.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      }
    }
  }
  return RecurrencePairSet::from_sorted(n, std::move(pairs));
}

RecurrencePairSet recurrence_set_grouped(const EmbeddedSeries& es) {
  const std::size_t n = es.rows();
  check_index_range(n);

  std::vector<std::uint32_t> group_of(n);
  std::vector<std::uint32_t> group_size;
  {
    std::vector<std::uint64_t> row_hash(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t h = es.config().dimension;
      for (std::size_t k = 0; k < es.config().dimension; ++k) h = mix64(h ^ (h << 7) ^ es.at(i, k));
      row_hash[i] = h;
    }

    // Keys are representative row indices; hashing and equality look at row content.
    const auto hash = [&row_hash](std::uint32_t i) { return static_cast<std::size_t>(row_hash[i]); };
    const auto equal = [&es, &row_hash](std::uint32_t a, std::uint32_t b) {
      return row_hash[a] == row_hash[b] && es.rows_equal(a, b);
    };
    std::unordered_map<std::uint32_t, std::uint32_t, decltype(hash), decltype(equal)> index(
        n, hash, equal);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto [it, inserted] =
          index.try_emplace(i, static_cast<std::uint32_t>(group_size.size()));
      if (inserted) group_size.push_back(0);
      group_of[i] = it->second;
      ++group_size[it->second];
    }
  }

  // Members of each group, contiguous and ascending.
  const std::size_t groups = group_size.size();
  std::vector<std::size_t> group_begin(groups + 1, 0);
  std::uint64_t total_pairs = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    group_begin[g + 1] = group_begin[g] + group_size[g];
    total_pairs += static_cast<std::uint64_t>(group_size[g]) * (group_size[g] - 1) / 2;
  }
  std::vector<std::uint32_t> members(n);
  std::vector<std::size_t> fill(group_begin.begin(), group_begin.end() - 1);
  std::vector<std::size_t> slot(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    slot[i] = fill[group_of[i]]++;
    members[slot[i]] = i;
  }

  std::vector<RecurrencePair> pairs;
  pairs.reserve(total_pairs);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::size_t stop = group_begin[group_of[i] + 1];
    for (std::size_t s = slot[i] + 1; s < stop; ++s) pairs.push_back({i, members[s]});
  }
  return RecurrencePairSet::from_sorted(n, std::move(pairs));
}

std::vector<DiagonalLine> extract_diagonal_lines(const RecurrencePairSet& pairs) {
  std::vector<DiagonalLine> lines;
  for_each_diagonal_line(pairs, [&lines](const DiagonalLine& l) { lines.push_back(l); });
  std::sort(lines.begin(), lines.end(), [](const DiagonalLine& a, const DiagonalLine& b) {
    return a.offset != b.offset ? a.offset < b.offset : a.start < b.start;
  });
  return lines;
}

std::size_t Bitmap::count_set() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Bitmap Bitmap::transposed() const {
  Bitmap t(side_);
  for (std::size_t r = 0; r < side_; ++r) {
    for (std::size_t c = 0; c < side_; ++c) t.bits_[c * side_ + r] = bits_[r * side_ + c];
  }
  return t;
}

void Bitmap::write_pbm(std::ostream& out) const {
  constexpr std::size_t kLineWidth = 70;
  out << "P1\n" << side_ << ' ' << side_ << '\n';
  std::string line;
  for (std::size_t r = 0; r < side_; ++r) {
    line.clear();
    for (std::size_t c = 0; c < side_; ++c) {
      line.push_back(bits_[r * side_ + c] ? '1' : '0');
      if (line.size() == kLineWidth) {
        out << line << '\n';
        line.clear();
      }
    }
    if (!line.empty()) out << line << '\n';
  }
}

Bitmap recurrence_plot_bitmap(const RecurrencePairSet& pairs) {
  Bitmap bmp(pairs.rows());
  for (std::size_t i = 0; i < pairs.rows(); ++i) bmp.set(i, i);
  for (const auto& p : pairs) {
    bmp.set(p.i, p.j);
    bmp.set(p.j, p.i);
  }
  return bmp;
}

}  // namespace rqa
