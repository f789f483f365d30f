#include "psymet/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "psymet/errors.hpp"

namespace psymet {

namespace {

// Roots and weights of the physicists' Hermite polynomial H_n via Newton
// iteration on the three-term recurrence, largest root first. Initial
// guesses follow the classical gauher scheme; each root then converges in a
// handful of Newton steps.
void gauss_hermite_physicists(int n, std::vector<double>& x, std::vector<double>& w) {
  constexpr double kEps = 1e-14;
  constexpr int kMaxNewton = 40;
  const double pim4 = 0.7511255444649425;  // pi^(-1/4)

  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    int it = 0;
    for (; it < kMaxNewton; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= kEps) break;
    }
    if (it == kMaxNewton) throw NumericError("gauss_hermite: Newton iteration stalled");
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace

NormalQuadrature gauss_hermite_normal(int n_points) {
  if (n_points < 1) throw std::invalid_argument("gauss_hermite_normal: need >= 1 point");
  std::vector<double> x, w;
  gauss_hermite_physicists(n_points, x, w);

  NormalQuadrature q;
  q.nodes.resize(n_points);
  q.weights.resize(n_points);
  const double root2 = std::sqrt(2.0);
  double wsum = 0.0;
  for (int i = 0; i < n_points; ++i) {
    // gauher emits roots descending; flip to ascending while transforming
    // x -> sqrt(2) x, w -> w / sqrt(pi) for the N(0,1) density.
    q.nodes[i] = root2 * x[n_points - 1 - i];
    q.weights[i] = w[n_points - 1 - i];
    wsum += q.weights[i];
  }
  for (double& wi : q.weights) wi /= wsum;  // exact unit mass
  return q;
}

}  // namespace psymet
