#pragma once

#include <cstddef>
#include <span>

namespace rqa::stats {

double mean(std::span<const double> x);
/// n - 1 denominator; throws StatsError when n < 2.
double sample_variance(std::span<const double> x);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// Student t distribution with `df` (possibly fractional) degrees of freedom.
double student_t_cdf(double t, double df);
/// P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);
/// Critical value c with P(|T| >= c) = alpha.
double student_t_critical(double alpha, double df);

/// Upper tail P(F >= f) of the F distribution.
double f_upper_tail(double f, double df_num, double df_den);

struct CorrelationResult {
  double r = 0.0;
  std::size_t n = 0;
  double t = 0.0;  // r sqrt((n-2)/(1-r^2)), infinite when |r| = 1
  double p = 1.0;  // two-sided, df = n - 2
};

/// Throws StatsError on length mismatch, n < 3 or a constant argument.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;  // Welch-Satterthwaite
  double p = 1.0;   // two-sided
  /// Both samples constant: t = 0 with df = n_a + n_b - 2 if their values
  /// agree, otherwise t = +/-inf and p = 0.
  bool degenerate = false;
};

/// Throws StatsError if either sample has fewer than 2 values.
TTestResult welch_t(std::span<const double> a, std::span<const double> b);

struct FTestResult {
  double f = 1.0;  // larger variance / smaller variance
  double df_num = 0.0;
  double df_den = 0.0;
  double p = 1.0;  // two-sided
};

/// Throws StatsError if either sample has fewer than 2 values or zero variance.
FTestResult f_test(std::span<const double> a, std::span<const double> b);

}  // namespace rqa::stats
