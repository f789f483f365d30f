#include "psymet/rasch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psymet/errors.hpp"

namespace psymet {

double rasch_icc(double theta, double b, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("rasch_icc: discrimination must be positive");
  const double z = a * (theta - b);
  // Evaluate from the stable side.
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

constexpr double kBLo = -30.0, kBHi = 30.0;
constexpr double kALo = 0.01, kAHi = 100.0;

struct Observation {
  int item;
  std::int8_t x;
};

// Fixed view of the data: per-respondent observed (item, score) lists over
// the retained columns.
struct Problem {
  int n_items = 0;
  std::vector<std::vector<Observation>> by_respondent;
  std::vector<double> log_prior;  // log quadrature weights
  std::vector<double> nodes;

  int n_nodes() const { return static_cast<int>(nodes.size()); }
};

struct EStep {
  double loglik = 0.0;
  // Expected counts per item x node: respondents at the node (nbar) and
  // correct among them (rbar), both over respondents that answered the item.
  std::vector<double> nbar, rbar;  // flat [item * Q + q]
};

EStep run_estep(const Problem& pr, std::span<const double> b, double a) {
  const int q_count = pr.n_nodes();
  const int k = pr.n_items;

  std::vector<double> log_p(static_cast<std::size_t>(k) * q_count);
  std::vector<double> log_1mp(static_cast<std::size_t>(k) * q_count);
  for (int i = 0; i < k; ++i) {
    for (int q = 0; q < q_count; ++q) {
      const double p = rasch_icc(pr.nodes[q], b[i], a);
      log_p[i * q_count + q] = std::log(p);
      log_1mp[i * q_count + q] = std::log1p(-p);
    }
  }

  EStep out;
  out.nbar.assign(static_cast<std::size_t>(k) * q_count, 0.0);
  out.rbar.assign(static_cast<std::size_t>(k) * q_count, 0.0);

  std::vector<double> g(q_count);
  for (const auto& obs : pr.by_respondent) {
    for (int q = 0; q < q_count; ++q) g[q] = pr.log_prior[q];
    for (const Observation& o : obs) {
      const double* table = o.x ? log_p.data() : log_1mp.data();
      const double* row = table + static_cast<std::size_t>(o.item) * q_count;
      for (int q = 0; q < q_count; ++q) g[q] += row[q];
    }
    const double gmax = *std::max_element(g.begin(), g.end());
    double denom = 0.0;
    for (int q = 0; q < q_count; ++q) {
      g[q] = std::exp(g[q] - gmax);
      denom += g[q];
    }
    out.loglik += gmax + std::log(denom);
    const double inv = 1.0 / denom;
    for (const Observation& o : obs) {
      double* nb = out.nbar.data() + static_cast<std::size_t>(o.item) * q_count;
      double* rb = out.rbar.data() + static_cast<std::size_t>(o.item) * q_count;
      if (o.x) {
        for (int q = 0; q < q_count; ++q) {
          const double w = g[q] * inv;
          nb[q] += w;
          rb[q] += w;
        }
      } else {
        for (int q = 0; q < q_count; ++q) nb[q] += g[q] * inv;
      }
    }
  }
  return out;
}

// Root of f(b) = sum_q (rbar_q - nbar_q P(theta_q; b)) for one item.
// f is strictly increasing in b with f(-inf) < 0 < f(+inf) for non-degenerate
// items, so Newton with a shrinking bracket cannot escape.
double solve_item_difficulty(const Problem& pr, const double* nbar, const double* rbar,
                             double a, double b0, double tol) {
  double lo = kBLo, hi = kBHi;
  double b = std::clamp(b0, lo, hi);
  for (int it = 0; it < 200; ++it) {
    double f = 0.0, fp = 0.0;
    for (int q = 0; q < pr.n_nodes(); ++q) {
      const double p = rasch_icc(pr.nodes[q], b, a);
      f += rbar[q] - nbar[q] * p;
      fp += nbar[q] * p * (1.0 - p);
    }
    fp *= a;
    if (f > 0.0) {
      hi = b;
    } else {
      lo = b;
    }
    double next = fp > 0.0 ? b - f / fp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - b);
    b = next;
    if (step < tol) break;
  }
  return b;
}

// Root of g(a) = sum_i sum_q (rbar - nbar P)(theta_q - b_i); g is the
// complete-data score for a shared discrimination and is decreasing in a.
double solve_discrimination(const Problem& pr, const EStep& e, std::span<const double> b,
                            double a0, double tol) {
  const int q_count = pr.n_nodes();
  double lo = kALo, hi = kAHi;
  double a = std::clamp(a0, lo, hi);
  for (int it = 0; it < 200; ++it) {
    double g = 0.0, gp = 0.0;
    for (int i = 0; i < pr.n_items; ++i) {
      const double* nb = e.nbar.data() + static_cast<std::size_t>(i) * q_count;
      const double* rb = e.rbar.data() + static_cast<std::size_t>(i) * q_count;
      for (int q = 0; q < q_count; ++q) {
        const double z = pr.nodes[q] - b[i];
        const double p = rasch_icc(pr.nodes[q], b[i], a);
        g += (rb[q] - nb[q] * p) * z;
        gp -= nb[q] * p * (1.0 - p) * z * z;
      }
    }
    if (g > 0.0) {
      lo = a;
    } else {
      hi = a;
    }
    double next = gp < 0.0 ? a - g / gp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - a);
    a = next;
    if (step < tol) break;
  }
  return a;
}

// Marginal score vector via Fisher's identity: the gradient of the marginal
// log-likelihood equals the expected complete-data score at the posterior.
// Layout: d/db_1 .. d/db_k [, d/da when estimated].
std::vector<double> marginal_score(const Problem& pr, std::span<const double> b, double a,
                                   bool with_a) {
  const EStep e = run_estep(pr, b, a);
  const int q_count = pr.n_nodes();
  std::vector<double> s(pr.n_items + (with_a ? 1 : 0), 0.0);
  double sa = 0.0;
  for (int i = 0; i < pr.n_items; ++i) {
    const double* nb = e.nbar.data() + static_cast<std::size_t>(i) * q_count;
    const double* rb = e.rbar.data() + static_cast<std::size_t>(i) * q_count;
    double fi = 0.0;
    for (int q = 0; q < q_count; ++q) {
      const double p = rasch_icc(pr.nodes[q], b[i], a);
      const double resid = rb[q] - nb[q] * p;
      fi += resid;
      sa += resid * (pr.nodes[q] - b[i]);
    }
    s[i] = -a * fi;
  }
  if (with_a) s[pr.n_items] = sa;
  return s;
}

// Cholesky inverse diagonal of a symmetric positive definite matrix; empty
// on failure.
std::vector<double> spd_inverse_diagonal(std::vector<double> m, int n) {
  std::vector<double> chol(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m[i * n + j];
      for (int t = 0; t < j; ++t) s -= chol[i * n + t] * chol[j * n + t];
      if (i == j) {
        if (s <= 0.0) return {};
        chol[i * n + i] = std::sqrt(s);
      } else {
        chol[i * n + j] = s / chol[j * n + j];
      }
    }
  }
  // diag(M^-1) column by column: solve L y = e_c, then L' z = y.
  std::vector<double> diag(n, 0.0), y(n), z(n);
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < n; ++i) {
      double s = i == c ? 1.0 : 0.0;
      for (int t = 0; t < i; ++t) s -= chol[i * n + t] * y[t];
      y[i] = s / chol[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = y[i];
      for (int t = i + 1; t < n; ++t) s -= chol[t * n + i] * z[t];
      z[i] = s / chol[i * n + i];
    }
    diag[c] = z[c];
  }
  return diag;
}

std::vector<double> standard_errors(const Problem& pr, std::span<const double> b, double a,
                                    bool with_a) {
  const int k = pr.n_items;
  const int dim = k + (with_a ? 1 : 0);

  // Observed information by central differences of the analytic score.
  std::vector<double> info(static_cast<std::size_t>(dim) * dim, 0.0);
  std::vector<double> params(b.begin(), b.end());
  if (with_a) params.push_back(a);
  for (int j = 0; j < dim; ++j) {
    const double h = 1e-5 * std::max(1.0, std::fabs(params[j]));
    std::vector<double> hi_p = params, lo_p = params;
    hi_p[j] += h;
    lo_p[j] -= h;
    const double a_hi = with_a ? hi_p[k] : a;
    const double a_lo = with_a ? lo_p[k] : a;
    const auto s_hi = marginal_score(pr, std::span(hi_p).first(k), a_hi, with_a);
    const auto s_lo = marginal_score(pr, std::span(lo_p).first(k), a_lo, with_a);
    for (int i = 0; i < dim; ++i) {
      info[i * dim + j] = -(s_hi[i] - s_lo[i]) / (2.0 * h);
    }
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const double v = 0.5 * (info[i * dim + j] + info[j * dim + i]);
      info[i * dim + j] = info[j * dim + i] = v;
    }
  }

  std::vector<double> diag = spd_inverse_diagonal(std::move(info), dim);
  std::vector<double> se(k, std::numeric_limits<double>::quiet_NaN());
  if (!diag.empty()) {
    for (int i = 0; i < k; ++i) se[i] = diag[i] > 0.0 ? std::sqrt(diag[i]) : se[i];
    return se;
  }
  // Non-PD information (flat corner of the likelihood): fall back to the
  // per-item expected information.
  const EStep e = run_estep(pr, b, a);
  const int q_count = pr.n_nodes();
  for (int i = 0; i < k; ++i) {
    const double* nb = e.nbar.data() + static_cast<std::size_t>(i) * q_count;
    double ii = 0.0;
    for (int q = 0; q < q_count; ++q) {
      const double p = rasch_icc(pr.nodes[q], b[i], a);
      ii += nb[q] * p * (1.0 - p);
    }
    ii *= a * a;
    if (ii > 0.0) se[i] = 1.0 / std::sqrt(ii);
  }
  return se;
}

}  // namespace

RaschFit fit_rasch_mml(const ResponseMatrix& m, const RaschOptions& options) {
  if (options.grid_points < 3) {
    throw std::invalid_argument("fit_rasch_mml: grid_points must be >= 3");
  }

  RaschFit fit;
  fit.population = m.population();
  fit.quadrature = gauss_hermite_normal(options.grid_points);
  fit.discrimination_estimated = options.estimate_discrimination;

  // Screen out degenerate columns.
  std::vector<std::size_t> retained;
  for (std::size_t c = 0; c < m.n_items(); ++c) {
    const auto [answered, correct] = m.column_counts(c);
    if (answered == 0) {
      fit.dropped_items.push_back({m.item_ids()[c], "no responses"});
    } else if (correct == answered) {
      fit.dropped_items.push_back({m.item_ids()[c], "all responses correct"});
    } else if (correct == 0) {
      fit.dropped_items.push_back({m.item_ids()[c], "all responses incorrect"});
    } else {
      retained.push_back(c);
    }
  }
  if (retained.empty()) {
    throw NumericError("fit_rasch_mml: every item is degenerate (population '" +
                       m.population().name + "')");
  }
  if (retained.size() < 2) {
    throw NumericError("fit_rasch_mml: fewer than 2 estimable items");
  }

  Problem pr;
  pr.n_items = static_cast<int>(retained.size());
  pr.nodes = fit.quadrature.nodes;
  pr.log_prior.resize(fit.quadrature.weights.size());
  for (std::size_t q = 0; q < pr.log_prior.size(); ++q) {
    pr.log_prior[q] = std::log(fit.quadrature.weights[q]);
  }
  for (std::size_t r = 0; r < m.n_respondents(); ++r) {
    std::vector<Observation> obs;
    for (std::size_t local = 0; local < retained.size(); ++local) {
      const Cell v = m.cell(r, retained[local]);
      if (v == kMissingCell) continue;
      obs.push_back({static_cast<int>(local), v});
    }
    if (!obs.empty()) pr.by_respondent.push_back(std::move(obs));
  }
  if (pr.by_respondent.size() < 2) {
    throw NumericError("fit_rasch_mml: fewer than 2 respondents with responses");
  }

  for (std::size_t c : retained) fit.item_ids.push_back(m.item_ids()[c]);

  // Start at the logit of the observed proportion correct unless overridden.
  std::vector<double> b(retained.size());
  if (!options.initial_b.empty()) {
    if (options.initial_b.size() != retained.size()) {
      throw std::invalid_argument("fit_rasch_mml: initial_b length (" +
                                  std::to_string(options.initial_b.size()) +
                                  ") does not match retained items (" +
                                  std::to_string(retained.size()) + ")");
    }
    for (std::size_t i = 0; i < retained.size(); ++i) {
      b[i] = std::clamp(options.initial_b[i], kBLo, kBHi);
    }
  } else {
    for (std::size_t i = 0; i < retained.size(); ++i) {
      const auto [answered, correct] = m.column_counts(retained[i]);
      const double p = std::clamp(static_cast<double>(correct) / answered, 0.02, 0.98);
      b[i] = -std::log(p / (1.0 - p));
    }
  }
  double a = 1.0;

  for (int iter = 0; iter < options.max_em_iterations; ++iter) {
    const EStep e = run_estep(pr, b, a);
    fit.loglik_trace.push_back(e.loglik);

    std::vector<double> b_new = b;
    double a_new = a;
    const int cycles = options.estimate_discrimination ? 5 : 1;
    for (int cycle = 0; cycle < cycles; ++cycle) {
      for (int i = 0; i < pr.n_items; ++i) {
        const int q_count = pr.n_nodes();
        b_new[i] = solve_item_difficulty(
            pr, e.nbar.data() + static_cast<std::size_t>(i) * q_count,
            e.rbar.data() + static_cast<std::size_t>(i) * q_count, a_new, b_new[i],
            options.newton_tol);
      }
      if (!options.estimate_discrimination) break;
      const double a_next = solve_discrimination(pr, e, b_new, a_new, options.newton_tol);
      const bool settled = std::fabs(a_next - a_new) < options.newton_tol;
      a_new = a_next;
      if (settled) break;
    }

    double delta = std::fabs(a_new - a);
    for (std::size_t i = 0; i < b.size(); ++i) {
      delta = std::max(delta, std::fabs(b_new[i] - b[i]));
    }
    b = std::move(b_new);
    a = a_new;
    fit.iterations = iter + 1;
    if (delta < options.em_tol) {
      fit.converged = true;
      break;
    }
  }

  const EStep final_e = run_estep(pr, b, a);
  fit.loglik_trace.push_back(final_e.loglik);
  fit.log_likelihood = final_e.loglik;
  fit.b = b;
  fit.discrimination = a;
  fit.se_b = standard_errors(pr, b, a, options.estimate_discrimination);
  return fit;
}

double rasch_marginal_loglik(const ResponseMatrix& m, std::span<const std::string> item_ids,
                             std::span<const double> b, double a,
                             const NormalQuadrature& quad) {
  if (item_ids.size() != b.size()) {
    throw std::invalid_argument("rasch_marginal_loglik: item/difficulty length mismatch");
  }
  Problem pr;
  pr.n_items = static_cast<int>(b.size());
  pr.nodes = quad.nodes;
  pr.log_prior.resize(quad.weights.size());
  for (std::size_t q = 0; q < pr.log_prior.size(); ++q) {
    pr.log_prior[q] = std::log(quad.weights[q]);
  }
  std::vector<std::size_t> cols;
  for (const std::string& id : item_ids) {
    auto idx = m.item_index(id);
    if (!idx) throw std::invalid_argument("rasch_marginal_loglik: unknown item '" + id + "'");
    cols.push_back(*idx);
  }
  for (std::size_t r = 0; r < m.n_respondents(); ++r) {
    std::vector<Observation> obs;
    for (std::size_t local = 0; local < cols.size(); ++local) {
      const Cell v = m.cell(r, cols[local]);
      if (v == kMissingCell) continue;
      obs.push_back({static_cast<int>(local), v});
    }
    if (!obs.empty()) pr.by_respondent.push_back(std::move(obs));
  }
  return run_estep(pr, b, a).loglik;
}

std::vector<std::optional<double>> eap_abilities(const RaschFit& fit, const ResponseMatrix& m) {
  if (!fit.converged) {
    throw std::invalid_argument("eap_abilities: fit did not converge");
  }
  std::vector<std::size_t> cols;
  for (const std::string& id : fit.item_ids) {
    auto idx = m.item_index(id);
    if (!idx) throw std::invalid_argument("eap_abilities: matrix lacks item '" + id + "'");
    cols.push_back(*idx);
  }
  const auto& quad = fit.quadrature;
  const int q_count = static_cast<int>(quad.nodes.size());

  std::vector<std::optional<double>> out(m.n_respondents());
  std::vector<double> g(q_count);
  for (std::size_t r = 0; r < m.n_respondents(); ++r) {
    bool any = false;
    for (int q = 0; q < q_count; ++q) g[q] = std::log(quad.weights[q]);
    for (std::size_t local = 0; local < cols.size(); ++local) {
      const Cell v = m.cell(r, cols[local]);
      if (v == kMissingCell) continue;
      any = true;
      for (int q = 0; q < q_count; ++q) {
        const double p = rasch_icc(quad.nodes[q], fit.b[local], fit.discrimination);
        g[q] += v ? std::log(p) : std::log1p(-p);
      }
    }
    if (!any) continue;
    const double gmax = *std::max_element(g.begin(), g.end());
    double denom = 0.0, num = 0.0;
    for (int q = 0; q < q_count; ++q) {
      const double w = std::exp(g[q] - gmax);
      denom += w;
      num += w * quad.nodes[q];
    }
    out[r] = num / denom;
  }
  return out;
}

}  // namespace psymet
