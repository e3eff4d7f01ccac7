#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "expwalk/dist.hpp"
#include "expwalk/graph.hpp"
#include "expwalk/report.hpp"
#include "expwalk/spectral.hpp"
#include "expwalk/walks.hpp"

namespace expwalk {

/// Var(Z_t) from the spectral covariance expansion.
double variance_formula(const RegularGraph& g, const Labelling& lab, int t,
                        const Spectrum& s);

/// |Var(Z_t) - alpha(1-alpha)t| (exact law) against 2 alpha(1-alpha) t lambda/(1-lambda).
BoundReport variance_bound_check(const RegularGraph& g, const Labelling& lab, int t);

/// lim Var(Z_t)/t in closed form.
double asymptotic_sigma2(const RegularGraph& g, const Labelling& lab, const Spectrum& s);
/// Same limit for a chain with symmetric transition matrix, uniform start and
/// 0/1 valuation (the sticky chain is one).
double asymptotic_sigma2(const FiniteChain& c);

/// (1+p)/(4(1-p)).
double sticky_sigma2(double p);
/// (4 sigma2 - 1)/(4 sigma2 + 1).
double matching_sticky_p(double sigma2);

/// sup_k |P(k) - (t sigma2)^{-1/2} phi((k - t mean_rate)/sqrt(t sigma2))| over the support of law.
double lclt_error(const IntDistribution& law, int t, double sigma2, double mean_rate);
double lclt_error(const FiniteChain& c, int t, double sigma2, double mean_rate);

double tv_to_discretized_normal(const IntDistribution& law, int t, double sigma2,
                                double mean_rate);
double tv_to_discretized_normal(const FiniteChain& c, int t, double sigma2,
                                double mean_rate);

/// ||Z_t - R_t||_TV against the sticky chain with matched p; balanced only.
double tv_to_sticky(const RegularGraph& g, const Labelling& lab, int t);
/// ||Z_t - Bin(t, alpha)||_TV.
double tv_to_iid(const RegularGraph& g, const Labelling& lab, int t);

/// P(|N_t - E N_t| >= gamma) for visits to a against 4 exp(-gamma^2 (1-lambda)/(20 t)).
BoundReport walk_chernoff_check(const RegularGraph& g, const Spectrum& s,
                                const VertexSet& a, int t, double gamma);

/// P(N <= x) for N ~ Bin(trials, p) against exp(-mu phi(x/mu)), phi(a) = 1 - a + a log a.
BoundReport binomial_tail_check(std::int64_t trials, double p, double x);

/// Explicit constants as functions of (lambda, d, alpha). The balanced forms
/// are used when alpha == 1/2, the general-density forms otherwise.
struct PaperConstants {
  double lambda = 0.0;
  double d = 0.0;
  double alpha = 0.5;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c5 = 0.0;
  double c6 = 0.0;
  std::optional<double> c1_small_lambda;
  double m_defect = 0.0;
  double theta0 = 0.0;
  double delta = 0.0;
  double sigma_lower = 0.0;
  double eta_lower = 0.0;
  double bt_lower_coeff = 0.0;
  double c4 = 6983.0;

  bool balanced() const { return alpha == 0.5; }
  /// Best available constant for the pointwise bound C/t.
  double lclt_constant() const;
  /// Constant for the C log(t)^{1/4}/sqrt(t) total-variation bound.
  double tv_constant() const;
};

PaperConstants paper_constants(double lambda, std::size_t d, double alpha);

/// Sticky-chain analogues with 1 - lambda replaced by 1 - |p|.
double sticky_lclt_constant(double p);
double sticky_tv_constant(double p);

struct ConvergenceCurve {
  std::vector<int> t_grid;
  std::vector<double> values;
  double loglog_slope = 0.0;
  double slope_stderr = 0.0;
};

/// Unweighted least squares of log(value) on log(t). Throws NumericFailure
/// when any value is not strictly positive.
ConvergenceCurve fit_curve(std::vector<int> t_grid, std::vector<double> values);

/// Evaluates metric at every grid point (at least 4 points, each >= 16) and fits.
ConvergenceCurve convergence_curve(const std::function<double(int)>& metric,
                                   std::span<const int> t_grid);

void validate_t_grid(std::span<const int> t_grid);

// Grid versions that share one dynamic-programming pass per chain.
std::vector<double> lclt_errors(const FiniteChain& c, std::span<const int> t_grid,
                                double sigma2, double mean_rate);
std::vector<double> tv_normal_errors(const FiniteChain& c, std::span<const int> t_grid,
                                     double sigma2, double mean_rate);
std::vector<double> tv_sticky_errors(const RegularGraph& g, const Labelling& lab,
                                     std::span<const int> t_grid);

}  // namespace expwalk
