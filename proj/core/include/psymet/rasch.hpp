#ifndef PSYMET_RASCH_HPP
#define PSYMET_RASCH_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psymet/quadrature.hpp"
#include "psymet/response_matrix.hpp"

namespace psymet {

// One-parameter logistic item characteristic curve,
// P(correct | theta) = 1 / (1 + exp(-a (theta - b))).
double rasch_icc(double theta, double b, double a = 1.0);

struct RaschOptions {
  int grid_points = 61;
  bool estimate_discrimination = false;  // else fixed at 1 (pure Rasch)
  double em_tol = 1e-4;                  // stop on max |param change|
  double newton_tol = 1e-10;             // inner M-step solves
  int max_em_iterations = 500;
  // Starting difficulties per retained item; empty = logits of the observed
  // proportions. The optimum must not depend on this.
  std::vector<double> initial_b;
};

struct DroppedItem {
  std::string item_id;
  std::string reason;
};

// Marginal maximum likelihood fit of item difficulties under a standard
// normal ability prior.
struct RaschFit {
  PopulationTag population;
  std::vector<std::string> item_ids;  // retained items, matrix order
  std::vector<double> b;
  std::vector<double> se_b;
  double discrimination = 1.0;
  bool discrimination_estimated = false;
  NormalQuadrature quadrature;
  double log_likelihood = 0.0;
  std::vector<double> loglik_trace;  // marginal log-likelihood per EM iteration
  int iterations = 0;
  bool converged = false;
  std::vector<DroppedItem> dropped_items;
};

// Bock-Aitkin EM: the E-step weights each respondent over the quadrature
// grid by their posterior ability; the M-step re-solves each item's score
// equation by safeguarded Newton. Missing cells simply drop out of the
// likelihood. Items answered all-correct or all-incorrect are removed up
// front and listed in dropped_items. Throws NumericError when nothing
// estimable remains.
RaschFit fit_rasch_mml(const ResponseMatrix& m, const RaschOptions& options = {});

// Marginal log-likelihood of the data under given difficulties; used for
// diagnostics and tests.
double rasch_marginal_loglik(const ResponseMatrix& m, std::span<const std::string> item_ids,
                             std::span<const double> b, double a, const NormalQuadrature& quad);

// Expected a-posteriori ability per respondent under a converged fit.
// Respondents with no responses on the fit's items get an empty entry.
std::vector<std::optional<double>> eap_abilities(const RaschFit& fit, const ResponseMatrix& m);

}  // namespace psymet

#endif
