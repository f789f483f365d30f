#include "psymet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "psymet/errors.hpp"

namespace psymet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Continued fraction for the incomplete beta function, modified Lentz.
double beta_cont_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
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
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericError("incomplete_beta: continued fraction did not converge");
}

double sample_mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw NumericError("incomplete_beta: requires a, b > 0");
  if (x < 0.0 || x > 1.0) throw NumericError("incomplete_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // Use the expansion that converges fast; mirror for the other half.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cont_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_cont_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw NumericError("student_t_two_sided_p: df must be positive");
  if (std::isnan(t)) return kNaN;
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

CorrResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw NumericError("pearson: length mismatch");
  const int n = static_cast<int>(x.size());
  CorrResult out;
  out.n = n;
  if (n < 3) {
    out.defined = false;
    out.r = out.p = kNaN;
    out.note = "fewer than 3 observations";
    return out;
  }
  const double mx = sample_mean(x), my = sample_mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    out.defined = false;
    out.r = out.p = kNaN;
    out.note = "zero variance";
    return out;
  }
  double r = sxy / std::sqrt(sxx * syy);
  r = std::clamp(r, -1.0, 1.0);
  out.r = r;
  const double df = n - 2;
  const double denom = 1.0 - r * r;
  if (denom <= 0.0) {
    out.p = 0.0;
  } else {
    out.p = student_t_two_sided_p(r * std::sqrt(df / denom), df);
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // ranks i+1 .. j+1 averaged over the tie group
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

// Exact two-sided permutation p-value for Spearman's rho on <= 9
// observations. Permuting one rank vector leaves rho affine in
// S = sum rx[i]*ry[perm[i]] with positive slope, so |rho| >= |rho_obs| is a
// pair of cuts on S. A fixed epsilon keeps ties in the FP comparison.
double spearman_exact_p(const std::vector<double>& rx, std::vector<double> ry, double rho_obs) {
  const std::size_t n = rx.size();
  const double mx = sample_mean(rx), my = sample_mean(ry);
  double sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  const double scale = std::sqrt(sxx * syy);
  const double center = static_cast<double>(n) * mx * my;

  std::sort(ry.begin(), ry.end());
  long long hits = 0, total = 0;
  const double target = std::fabs(rho_obs) - 1e-12;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += rx[i] * ry[i];
    const double rho = (s - center) / scale;
    if (std::fabs(rho) >= target) ++hits;
    ++total;
  } while (std::next_permutation(ry.begin(), ry.end()));
  // next_permutation over a multiset enumerates distinct orderings; each
  // distinct ordering stands for an equal number of raw permutations, so the
  // ratio is the full n! fraction.
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

CorrResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw NumericError("spearman: length mismatch");
  const int n = static_cast<int>(x.size());
  CorrResult out;
  out.n = n;
  if (n < 3) {
    out.defined = false;
    out.r = out.p = kNaN;
    out.note = "fewer than 3 observations";
    return out;
  }
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  CorrResult base = pearson(rx, ry);
  if (!base.defined) {
    base.note = "all values tied";
    return base;
  }
  out.r = base.r;
  if (n <= 9) {
    out.p = spearman_exact_p(rx, ry, base.r);
  } else {
    out.p = base.p;
  }
  return out;
}

std::string significance_stars(double p) {
  if (std::isnan(p)) return "";
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

}  // namespace psymet
