#include "expwalk/clt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "expwalk/error.hpp"

namespace expwalk {
namespace {

void require_density(const Labelling& lab) {
  require(lab.ones() > 0 && lab.ones() < lab.size(), ErrorKind::OutOfHypothesis,
          "label density alpha must lie strictly between 0 and 1");
}

void require_gap(const Spectrum& s) {
  require(s.lambda_star < 1.0 - 1e-12, ErrorKind::OutOfHypothesis,
          "graph is not an expander (lambda* = 1, e.g. bipartite)");
}

// alpha(1-alpha) + 2 alpha^2 sum_j c_j lambda_j / (1 - lambda_j), j over non-top modes.
double sigma2_from_modes(double alpha, std::span<const double> lambdas,
                         std::span<const double> coeffs) {
  KahanSum s;
  for (std::size_t j = 0; j < lambdas.size(); ++j)
    s += coeffs[j] * lambdas[j] / (1.0 - lambdas[j]);
  return alpha * (1.0 - alpha) + 2.0 * alpha * alpha * s.value();
}

IntDistribution visit_law(const RegularGraph& g, const VertexSet& a, int t) {
  std::vector<std::uint8_t> bits(g.n(), 0);
  for (Vertex v : a) {
    require(v < g.n(), ErrorKind::InvalidParameter, "vertex outside the graph");
    bits[v] = 1;
  }
  return exact_weight_law(walk_chain(g, Labelling(std::move(bits))), t);
}

}  // namespace

double variance_formula(const RegularGraph& g, const Labelling& lab, int t,
                        const Spectrum& s) {
  require(t >= 1, ErrorKind::InvalidParameter, "t must be >= 1");
  require(lab.size() == g.n(), ErrorKind::InvalidParameter,
          "labelling length does not match graph size");
  require_density(lab);
  const double alpha = lab.alpha();
  const auto proj = uniform_set_projections(s, lab.one_set());
  KahanSum cov;
  for (std::size_t j = 1; j < s.size(); ++j) {
    const double c = proj[j] * proj[j];
    const double lam = s.eigenvalues[j];
    double power = 1.0;
    KahanSum inner;
    for (int k = 1; k < t; ++k) {
      power *= lam;
      inner += static_cast<double>(t - k) * power;
    }
    cov += c * inner.value();
  }
  return alpha * (1.0 - alpha) * t + 2.0 * alpha * alpha * cov.value();
}

BoundReport variance_bound_check(const RegularGraph& g, const Labelling& lab, int t) {
  require_density(lab);
  const auto s = spectrum(g);
  require_gap(s);
  const double alpha = lab.alpha();
  const double var = moments(exact_weight_law(walk_chain(g, lab), t)).variance;
  const double base = alpha * (1.0 - alpha) * t;
  return BoundReport::make(std::abs(var - base),
                           2.0 * base * s.lambda_star / (1.0 - s.lambda_star),
                           "variance deviation from the i.i.d. value");
}

double asymptotic_sigma2(const RegularGraph& g, const Labelling& lab, const Spectrum& s) {
  require(lab.size() == g.n(), ErrorKind::InvalidParameter,
          "labelling length does not match graph size");
  require_density(lab);
  require_gap(s);
  const auto proj = uniform_set_projections(s, lab.one_set());
  std::vector<double> lambdas(s.eigenvalues.begin() + 1, s.eigenvalues.end());
  std::vector<double> coeffs;
  for (std::size_t j = 1; j < s.size(); ++j) coeffs.push_back(proj[j] * proj[j]);
  return sigma2_from_modes(lab.alpha(), lambdas, coeffs);
}

double asymptotic_sigma2(const FiniteChain& c) {
  c.validate();
  const std::size_t m = c.states();
  for (std::size_t u = 0; u < m; ++u) {
    require(std::abs(c.initial[u] - 1.0 / static_cast<double>(m)) <= 1e-12,
            ErrorKind::OutOfHypothesis, "chain must start uniformly");
    require(c.valuation[u] == 0 || c.valuation[u] == 1, ErrorKind::OutOfHypothesis,
            "chain valuation must be 0/1");
    for (std::size_t v = 0; v < m; ++v)
      require(std::abs(c.transition(u, v) - c.transition(v, u)) <= 1e-12,
              ErrorKind::OutOfHypothesis, "chain transition must be symmetric");
  }
  VertexSet ones;
  for (std::size_t u = 0; u < m; ++u)
    if (c.valuation[u]) ones.push_back(static_cast<Vertex>(u));
  require(!ones.empty() && ones.size() < m, ErrorKind::OutOfHypothesis,
          "label density alpha must lie strictly between 0 and 1");

  const auto eig = jacobi_eigen(c.transition);
  const auto top = static_cast<std::size_t>(
      std::max_element(eig.values.begin(), eig.values.end()) - eig.values.begin());
  const double alpha = static_cast<double>(ones.size()) / static_cast<double>(m);
  std::vector<double> lambdas, coeffs;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == top) continue;
    require(std::abs(eig.values[j]) < 1.0 - 1e-12, ErrorKind::OutOfHypothesis,
            "chain has a second eigenvalue of modulus 1");
    // Unit-norm vector v: pi-normalised f = sqrt(m) v, so <pi_B, f> = sqrt(m) mean_B(v).
    double acc = 0.0;
    for (Vertex x : ones) acc += eig.vectors[j][x];
    const double proj = std::sqrt(static_cast<double>(m)) * acc /
                        static_cast<double>(ones.size());
    lambdas.push_back(eig.values[j]);
    coeffs.push_back(proj * proj);
  }
  return sigma2_from_modes(alpha, lambdas, coeffs);
}

double sticky_sigma2(double p) {
  require(p > -1.0 && p < 1.0, ErrorKind::OutOfHypothesis, "sticky chain needs |p| < 1");
  return (1.0 + p) / (4.0 * (1.0 - p));
}

double matching_sticky_p(double sigma2) {
  require(sigma2 > 0.0, ErrorKind::InvalidParameter, "sigma2 must be positive");
  return (4.0 * sigma2 - 1.0) / (4.0 * sigma2 + 1.0);
}

double lclt_error(const IntDistribution& law, int t, double sigma2, double mean_rate) {
  require(t >= 1, ErrorKind::InvalidParameter, "t must be >= 1");
  require(sigma2 > 0.0, ErrorKind::InvalidParameter, "sigma2 must be positive");
  const double mean = t * mean_rate;
  const double var = t * sigma2;
  double worst = 0.0;
  for (std::int64_t k = law.lo(); k <= law.hi(); ++k)
    worst = std::max(worst, std::abs(law.at(k) -
                                     normal_density(static_cast<double>(k), mean, var)));
  return worst;
}

double lclt_error(const FiniteChain& c, int t, double sigma2, double mean_rate) {
  require(sigma2 > 0.0, ErrorKind::InvalidParameter, "sigma2 must be positive");
  return lclt_error(exact_weight_law(c, t), t, sigma2, mean_rate);
}

double tv_to_discretized_normal(const IntDistribution& law, int t, double sigma2,
                                double mean_rate) {
  require(t >= 1, ErrorKind::InvalidParameter, "t must be >= 1");
  require(sigma2 > 0.0, ErrorKind::InvalidParameter, "sigma2 must be positive");
  return tv_distance(law, discretized_normal(t * mean_rate, t * sigma2).law);
}

double tv_to_discretized_normal(const FiniteChain& c, int t, double sigma2,
                                double mean_rate) {
  require(sigma2 > 0.0, ErrorKind::InvalidParameter, "sigma2 must be positive");
  return tv_to_discretized_normal(exact_weight_law(c, t), t, sigma2, mean_rate);
}

double tv_to_sticky(const RegularGraph& g, const Labelling& lab, int t) {
  const int ts[] = {t};
  return tv_sticky_errors(g, lab, ts).front();
}

double tv_to_iid(const RegularGraph& g, const Labelling& lab, int t) {
  require_density(lab);
  return tv_distance(exact_weight_law(walk_chain(g, lab), t),
                     IntDistribution::binomial(t, lab.alpha()));
}

BoundReport walk_chernoff_check(const RegularGraph& g, const Spectrum& s,
                                const VertexSet& a, int t, double gamma) {
  require(t >= 1, ErrorKind::InvalidParameter, "t must be >= 1");
  require(gamma > 0.0 && gamma <= t, ErrorKind::InvalidParameter,
          "gamma must lie in (0, t]");
  const auto law = visit_law(g, a, t);
  const double expected =
      static_cast<double>(t) * static_cast<double>(a.size()) / static_cast<double>(g.n());
  KahanSum tail;
  for (std::int64_t k = law.lo(); k <= law.hi(); ++k)
    if (std::abs(static_cast<double>(k) - expected) >= gamma) tail += law.at(k);
  const double rhs =
      4.0 * std::exp(-gamma * gamma * (1.0 - s.lambda_star) / (20.0 * t));
  return BoundReport::make(tail.value(), rhs, "walk Chernoff bound on visits");
}

BoundReport binomial_tail_check(std::int64_t trials, double p, double x) {
  const double mu = static_cast<double>(trials) * p;
  require(x > 0.0 && x <= mu, ErrorKind::InvalidParameter, "x must lie in (0, mu]");
  const auto law = IntDistribution::binomial(trials, p);
  KahanSum cdf;
  for (std::int64_t k = law.lo(); k <= law.hi() && static_cast<double>(k) <= x; ++k)
    cdf += law.at(k);
  const double a = x / mu;
  const double phi = 1.0 - a + a * std::log(a);
  return BoundReport::make(cdf.value(), std::exp(-mu * phi), "binomial lower tail");
}

double PaperConstants::lclt_constant() const {
  if (!balanced()) return c5;
  return c1_small_lambda ? std::min(c1, *c1_small_lambda) : c1;
}

double PaperConstants::tv_constant() const { return balanced() ? c2 : c6; }

PaperConstants paper_constants(double lambda, std::size_t d_in, double alpha) {
  require(lambda >= 0.0 && lambda < 1.0, ErrorKind::InvalidParameter,
          "lambda must lie in [0, 1)");
  require(d_in >= 3, ErrorKind::InvalidParameter, "degree must be >= 3");
  require(alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidParameter,
          "alpha must lie in (0, 1)");
  PaperConstants k;
  const double d = static_cast<double>(d_in);
  const double gap = 1.0 - lambda;
  const double a3b6 = std::pow(alpha, 3) * std::pow(1.0 - alpha, 6);
  k.lambda = lambda;
  k.d = d;
  k.alpha = alpha;
  k.c1 = 2e13 * std::pow(d, 9) / std::pow(gap, 10);
  k.c2 = 1e14 * std::pow(d, 9) / std::pow(gap, 41.0 / 4.0);
  k.c3 = 2e23 * std::pow(d, 24) / std::pow(gap, 16);
  k.c5 = 4e12 * std::pow(d, 9) / (a3b6 * std::pow(gap, 10));
  k.c6 = 2e13 * std::pow(d, 9) / (a3b6 * std::pow(gap, 41.0 / 4.0));
  if (lambda <= 0.2) k.c1_small_lambda = 4e11 * std::pow(d, 3);
  k.m_defect = 1e10 * std::pow(d, 3) / std::pow(gap, 4);
  if (k.balanced()) {
    k.delta = gap * gap / 3.0;
    k.sigma_lower = gap / (10.0 * std::pow(d, 1.5));
    k.eta_lower = std::pow(gap, 8) / (8e11 * std::pow(d, 7));
    k.bt_lower_coeff = gap * gap / (48.0 * d * d);
  } else {
    const double b = 1.0 - alpha;
    k.delta = 0.25 * gap * gap * alpha * b;
    k.sigma_lower = std::sqrt(alpha * b * b * gap * gap / (64.0 * std::pow(d, 3)));
    k.eta_lower = alpha * alpha * std::pow(b, 4) * std::pow(gap, 8) / (3.1e11 * std::pow(d, 7));
    k.bt_lower_coeff = alpha * b * b * gap * gap / (32.0 * d * d);
  }
  k.theta0 = gap * gap * k.sigma_lower * k.sigma_lower / 2708.0;
  return k;
}

double sticky_lclt_constant(double p) {
  require(p > -1.0 && p < 1.0, ErrorKind::OutOfHypothesis, "sticky chain needs |p| < 1");
  return 1e11 / std::pow(1.0 - std::abs(p), 7);
}

double sticky_tv_constant(double p) {
  require(p > -1.0 && p < 1.0, ErrorKind::OutOfHypothesis, "sticky chain needs |p| < 1");
  return 1e12 / std::pow(1.0 - std::abs(p), 8);
}

ConvergenceCurve fit_curve(std::vector<int> t_grid, std::vector<double> values) {
  require(t_grid.size() == values.size() && t_grid.size() >= 2,
          ErrorKind::InvalidParameter, "curve needs matching grid and values");
  for (double v : values)
    require(std::isfinite(v) && v > 0.0, ErrorKind::NumericFailure,
            "degenerate curve: non-positive metric value");
  const std::size_t n = values.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::log(static_cast<double>(t_grid[i]));
    y[i] = std::log(values[i]);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  ConvergenceCurve c;
  c.loglog_slope = sxy / sxx;
  if (n > 2) {
    const double icept = my - c.loglog_slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - icept - c.loglog_slope * x[i];
      rss += r * r;
    }
    c.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  c.t_grid = std::move(t_grid);
  c.values = std::move(values);
  return c;
}

void validate_t_grid(std::span<const int> t_grid) {
  require(t_grid.size() >= 4, ErrorKind::InvalidParameter,
          "t grid needs at least 4 points");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    require(t_grid[i] >= 16, ErrorKind::InvalidParameter, "t grid points must be >= 16");
    require(i == 0 || t_grid[i] > t_grid[i - 1], ErrorKind::InvalidParameter,
            "t grid must be strictly increasing");
  }
}

ConvergenceCurve convergence_curve(const std::function<double(int)>& metric,
                                   std::span<const int> t_grid) {
  validate_t_grid(t_grid);
  std::vector<double> values;
  values.reserve(t_grid.size());
  for (int t : t_grid) values.push_back(metric(t));
  return fit_curve({t_grid.begin(), t_grid.end()}, std::move(values));
}

std::vector<double> lclt_errors(const FiniteChain& c, std::span<const int> t_grid,
                                double sigma2, double mean_rate) {
  require(sigma2 > 0.0, ErrorKind::InvalidParameter, "sigma2 must be positive");
  const auto laws = exact_weight_laws(c, t_grid);
  std::vector<double> out;
  for (std::size_t i = 0; i < laws.size(); ++i)
    out.push_back(lclt_error(laws[i], t_grid[i], sigma2, mean_rate));
  return out;
}

std::vector<double> tv_normal_errors(const FiniteChain& c, std::span<const int> t_grid,
                                     double sigma2, double mean_rate) {
  require(sigma2 > 0.0, ErrorKind::InvalidParameter, "sigma2 must be positive");
  const auto laws = exact_weight_laws(c, t_grid);
  std::vector<double> out;
  for (std::size_t i = 0; i < laws.size(); ++i)
    out.push_back(tv_to_discretized_normal(laws[i], t_grid[i], sigma2, mean_rate));
  return out;
}

std::vector<double> tv_sticky_errors(const RegularGraph& g, const Labelling& lab,
                                     std::span<const int> t_grid) {
  require(lab.size() == g.n(), ErrorKind::InvalidParameter,
          "labelling length does not match graph size");
  require(lab.balanced(), ErrorKind::OutOfHypothesis,
          "sticky comparison needs a balanced labelling");
  const auto s = spectrum(g);
  const double p = matching_sticky_p(asymptotic_sigma2(g, lab, s));
  const auto walk = exact_weight_laws(walk_chain(g, lab), t_grid);
  const auto sticky = exact_weight_laws(sticky_chain(p), t_grid);
  std::vector<double> out;
  for (std::size_t i = 0; i < walk.size(); ++i)
    out.push_back(tv_distance(walk[i], sticky[i]));
  return out;
}

}  // namespace expwalk
