#include "rqa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rqa/error.hpp"

namespace rqa::stats {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  throw StatsError("incomplete beta continued fraction did not converge");
}

void require_size(std::span<const double> x, std::size_t n, const char* what) {
  if (x.size() < n) {
    throw StatsError(std::string(what) + " needs at least " + std::to_string(n) + " values");
  }
}

}  // namespace

double mean(std::span<const double> x) {
  require_size(x, 1, "mean");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  require_size(x, 2, "sample variance");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw StatsError("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw StatsError("incomplete beta needs 0 <= x <= 1");
  if (x == 0.0 || x == 1.0) return x;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw StatsError("t distribution needs df > 0");
  if (std::isnan(t)) throw StatsError("t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double student_t_cdf(double t, double df) {
  const double tail = student_t_two_sided_p(t, df) / 2.0;
  return t < 0.0 ? tail : 1.0 - tail;
}

double student_t_critical(double alpha, double df) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw StatsError("alpha must be in (0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_two_sided_p(hi, df) > alpha) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (student_t_two_sided_p(mid, df) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double f_upper_tail(double f, double df_num, double df_den) {
  if (!(df_num > 0.0) || !(df_den > 0.0)) throw StatsError("F distribution needs df > 0");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return incomplete_beta(df_den / 2.0, df_num / 2.0, df_den / (df_den + df_num * f));
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StatsError("pearson: length mismatch");
  require_size(x, 3, "pearson");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw StatsError("pearson: constant input");

  CorrelationResult res;
  res.n = x.size();
  res.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(res.n - 2);
  const double one_minus_r2 = 1.0 - res.r * res.r;
  if (one_minus_r2 <= 0.0) {
    res.t = std::copysign(std::numeric_limits<double>::infinity(), res.r);
    res.p = 0.0;
  } else {
    res.t = res.r * std::sqrt(df / one_minus_r2);
    res.p = student_t_two_sided_p(res.t, df);
  }
  return res;
}

TTestResult welch_t(std::span<const double> a, std::span<const double> b) {
  require_size(a, 2, "welch_t sample a");
  require_size(b, 2, "welch_t sample b");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = sample_variance(a) / na;
  const double vb = sample_variance(b) / nb;
  const double diff = mean(a) - mean(b);

  TTestResult res;
  if (va + vb == 0.0) {
    res.degenerate = true;
    res.df = na + nb - 2.0;
    if (diff == 0.0) {
      res.t = 0.0;
      res.p = 1.0;
    } else {
      res.t = std::copysign(std::numeric_limits<double>::infinity(), diff);
      res.p = 0.0;
    }
    return res;
  }
  res.t = diff / std::sqrt(va + vb);
  res.df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  res.p = student_t_two_sided_p(res.t, res.df);
  return res;
}

FTestResult f_test(std::span<const double> a, std::span<const double> b) {
  require_size(a, 2, "f_test sample a");
  require_size(b, 2, "f_test sample b");
  const double va = sample_variance(a);
  const double vb = sample_variance(b);
  if (va == 0.0 || vb == 0.0) throw StatsError("f_test: zero variance sample");

  FTestResult res;
  const bool a_larger = va >= vb;
  res.f = a_larger ? va / vb : vb / va;
  res.df_num = static_cast<double>((a_larger ? a.size() : b.size()) - 1);
  res.df_den = static_cast<double>((a_larger ? b.size() : a.size()) - 1);
  // Two-sided p from the ratio in argument order, 2 min(P(F >= f), P(F <= f)),
  // which is unchanged when the samples are swapped.
  const double upper = f_upper_tail(va / vb, static_cast<double>(a.size() - 1),
                                    static_cast<double>(b.size() - 1));
  res.p = std::min(1.0, 2.0 * std::min(upper, 1.0 - upper));
  return res;
}

}  // namespace rqa::stats
