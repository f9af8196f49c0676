#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "rqa/error.hpp"
#include "rqa/metrics.hpp"
#include "synthetic.hpp"

using namespace rqa;

namespace {

const Alphabet kEnglish = Alphabet::preset("english-26");

// Oracle: dense upper-triangle matrix over m-gram strings, lines found by
// walking each diagonal. Shares nothing with the library's sparse path.
struct DenseMetrics {
  double rec = 0, det = 0, ent = 0, trend = 0;
  std::size_t maxline = 0;
};

DenseMetrics dense_metrics(const std::string& s, std::size_t m, std::size_t tau, std::size_t lmin) {
  std::vector<std::string> rows;
  for (std::size_t i = 0; i + (m - 1) * tau < s.size(); ++i) {
    std::string g;
    for (std::size_t k = 0; k < m; ++k) g.push_back(s[i + k * tau]);
    rows.push_back(g);
  }
  const std::size_t n = rows.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  std::size_t points = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rows[i] == rows[j]) r[i][j] = true, ++points;

  DenseMetrics out;
  out.rec = 100.0 * points / (n * (n - 1) / 2.0);
  std::map<std::size_t, std::size_t> hist;
  std::size_t det_points = 0;
  std::vector<double> density;
  for (std::size_t d = 1; d < n; ++d) {
    std::size_t run = 0, count = 0;
    for (std::size_t i = 0; i + d <= n; ++i) {
      const bool on = i + d < n && r[i][i + d];
      count += on;
      if (on) {
        ++run;
      } else if (run > 0) {
        if (run >= lmin) ++hist[run], det_points += run;
        run = 0;
      }
    }
    density.push_back(100.0 * count / (n - d));
  }
  out.det = points ? 100.0 * det_points / points : 0.0;
  std::size_t lines = 0;
  for (auto [len, c] : hist) lines += c, out.maxline = std::max(out.maxline, len);
  for (auto [len, c] : hist) {
    const double p = double(c) / lines;
    out.ent -= p * std::log2(p);
  }
  // slope via normal equations
  const double k = density.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double x = i + 1.0;
    sx += x, sy += density[i], sxx += x * x, sxy += x * density[i];
  }
  out.trend = k >= 2 ? 1000.0 * (k * sxy - sx * sy) / (k * sxx - sx * sx) : 0.0;
  return out;
}

RqaMetrics run(std::string_view text, EmbeddingConfig cfg = {3, 1, 2}, MetricsOptions opt = {}) {
  const auto s = make_sequence(text, kEnglish);
  return compute_metrics(recurrence_set_grouped(embed(s, cfg)), cfg, opt);
}

std::string apply_bijection(const std::string& s, const std::string& perm) {
  std::string out = s;
  for (auto& c : out) c = perm[c - 'a'];
  return out;
}

}  // namespace

TEST_CASE("hand-derived metrics: abcabcab") {
  // rows abc bca cab abc bca cab -> pairs (0,3) (1,4) (2,5), one line of length 3
  const auto m = run("abcabcab");
  CHECK(m.rec == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(m.det == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(m.maxline == 3);
  CHECK(m.entropy == 0.0);
  // densities by offset 0, 0, 100, 0, 0
  CHECK(m.trend == 0.0);
  CHECK(m.recurrent_points == 3);
  CHECK(m.deterministic_points == 3);
}

TEST_CASE("hand-derived metrics: banana") {
  const auto m = run("banana");
  CHECK(m.rec == doctest::Approx(100.0 / 6.0).epsilon(1e-12));
  CHECK(m.det == 0.0);
  CHECK(m.maxline == 0);
  CHECK(m.entropy == 0.0);
  CHECK(m.trend == 0.0);
}

TEST_CASE("hand-derived metrics: aaaaaa") {
  // 4 rows, all 6 cells recurrent; lines: offset 1 len 3, offset 2 len 2,
  // offset 3 len 1 (the corner cell is isolated, so 5 of 6 points are
  // deterministic)
  const auto m = run("aaaaaa");
  CHECK(m.rec == 100.0);
  CHECK(m.det == doctest::Approx(500.0 / 6.0).epsilon(1e-12));
  CHECK(m.maxline == 3);
  CHECK(m.entropy == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.trend == 0.0);
}

TEST_CASE("no recurrences") {
  const auto m = run("abcdefghij");
  CHECK(m.rec == 0.0);
  CHECK(m.det == 0.0);
  CHECK(m.maxline == 0);
  CHECK(m.entropy == 0.0);
  CHECK(m.trend == 0.0);
}

TEST_CASE("compute_metrics preconditions") {
  CHECK_THROWS_AS(compute_metrics(RecurrencePairSet(1, {}), {3, 1, 2}), EmbeddingError);
  CHECK_THROWS_AS(compute_metrics(RecurrencePairSet(5, {}), {3, 1, 1}), EmbeddingError);
}

TEST_CASE("two points give a defined zero trend") {
  const auto m = run("aaaa");  // 2 rows, 1 pair
  CHECK(m.rec == 100.0);
  CHECK(m.det == 0.0);
  CHECK(m.trend == 0.0);
}

TEST_CASE("trend sign follows density drift") {
  // recurrences concentrated near the main diagonal: density falls with offset
  std::string text;
  std::mt19937_64 rng(4);
  for (int k = 0; k < 30; ++k) {
    const auto word = testing::random_letters(rng, 6);
    text += word + word;
  }
  CHECK(run(text).trend < 0.0);
}

TEST_CASE("trend tail exclusion drops the last tenth of offsets") {
  // 12 rows -> offsets 1..11, tail exclusion keeps 1..10
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto text = testing::random_letters(rng, 40 + rng() % 200, 3);
    const auto full = run(text);
    const auto cut = run(text, {3, 1, 2}, {true});
    CHECK(cut.rec == full.rec);
    CHECK(cut.det == full.det);
    // oracle on the truncated density series
    const auto s = make_sequence(text, kEnglish);
    const auto ps = recurrence_set_grouped(embed(s, {3, 1, 2}));
    const std::size_t n = ps.rows();
    std::vector<double> dens(n - 1, 0.0);
    for (const auto& p : ps) dens[p.j - p.i - 1] += 100.0 / (n - (p.j - p.i));
    dens.resize(dens.size() - dens.size() / 10);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = dens.size();
    for (std::size_t i = 0; i < dens.size(); ++i) {
      sx += i + 1.0, sy += dens[i], sxx += (i + 1.0) * (i + 1.0), sxy += (i + 1.0) * dens[i];
    }
    CHECK(cut.trend == doctest::Approx(1000.0 * (k * sxy - sx * sy) / (k * sxx - sx * sx)).epsilon(1e-9));
  }
}

TEST_CASE("sparse metrics agree with the dense oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 1 + rng() % 4;
    const std::size_t tau = 1 + rng() % 2;
    const std::size_t lmin = 2 + rng() % 3;
    const auto text = testing::random_letters(rng, (m - 1) * tau + 2 + rng() % 250, 2 + rng() % 5);
    const auto got = run(text, {m, tau, lmin});
    const auto want = dense_metrics(text, m, tau, lmin);
    CHECK(got.rec == doctest::Approx(want.rec).epsilon(1e-12));
    CHECK(got.det == doctest::Approx(want.det).epsilon(1e-12));
    CHECK(got.maxline == want.maxline);
    CHECK(got.entropy == doctest::Approx(want.ent).epsilon(1e-9));
    CHECK(got.trend == doctest::Approx(want.trend).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("metric invariants") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const auto text = testing::lexicon_text(rng(), 0.4 * (rng() % 100) / 100.0, 100 + rng() % 400,
                                            5 + rng() % 40);
    const auto m = run(text);
    const auto rows = text.size() - 2;
    CHECK(m.rec >= 0.0);
    CHECK(m.rec <= 100.0);
    CHECK(m.det >= 0.0);
    CHECK(m.det <= 100.0);
    if (m.rec == 0.0) CHECK(m.det == 0.0);
    CHECK(m.maxline <= rows - 1);
    CHECK(m.entropy >= 0.0);
    // DET * points / 100 counts points
    CHECK(m.det * m.recurrent_points / 100.0 ==
          doctest::Approx(double(m.deterministic_points)).epsilon(1e-12));
  }
}

TEST_CASE("metrics are independent of the letter coding") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const auto text = testing::lexicon_text(rng(), 0.3, 300 + rng() % 300, 20);
    std::string perm = "abcdefghijklmnopqrstuvwxyz";
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(run(apply_bijection(text, perm)) == run(text));
  }
}

TEST_CASE("reversal preserves REC, DET, MAXLINE and ENT") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const auto text = testing::lexicon_text(rng(), 0.35, 200 + rng() % 400, 15);
    const std::string rev(text.rbegin(), text.rend());
    const auto a = run(text);
    const auto b = run(rev);
    CHECK(a.rec == b.rec);
    CHECK(a.det == b.det);
    CHECK(a.maxline == b.maxline);
    CHECK(a.entropy == b.entropy);
  }
}
