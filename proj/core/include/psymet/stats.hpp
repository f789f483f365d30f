#ifndef PSYMET_STATS_HPP
#define PSYMET_STATS_HPP

#include <span>
#include <string>
#include <vector>

namespace psymet {

// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
// Continued-fraction evaluation, relative error below 1e-10.
double incomplete_beta(double a, double b, double x);

// Two-sided tail probability P(|T| >= t) for Student's t with df degrees
// of freedom: I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_sided_p(double t, double df);

// Result of a correlation test. `defined` is false when a variance is zero
// (or inputs are otherwise degenerate); r and p are NaN in that case and
// `note` says why.
struct CorrResult {
  double r = 0.0;
  double p = 1.0;
  int n = 0;
  bool defined = true;
  std::string note;
};

// Sample Pearson correlation with a two-sided p from the t transform
// t = r*sqrt((n-2)/(1-r^2)) on n-2 degrees of freedom. Requires n >= 3.
CorrResult pearson(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation: Pearson on average ranks (ties get the mean
// rank). Two-sided p is exact (full permutation distribution) for n <= 9
// and the t approximation otherwise. Requires n >= 3.
CorrResult spearman(std::span<const double> x, std::span<const double> y);

// Average (fractional) ranks, 1-based; ties share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

// "***" below 0.001, "**" below 0.01, "*" below 0.05, else "".
std::string significance_stars(double p);

}  // namespace psymet

#endif
