#ifndef PSYMET_QUADRATURE_HPP
#define PSYMET_QUADRATURE_HPP

#include <vector>

namespace psymet {

// Gauss-Hermite rule transformed for a standard normal density: nodes theta_q
// ascending, weights summing to 1, so sum_q w_q f(theta_q) ~ E[f(theta)],
// theta ~ N(0,1).
struct NormalQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

NormalQuadrature gauss_hermite_normal(int n_points);

}  // namespace psymet

#endif
