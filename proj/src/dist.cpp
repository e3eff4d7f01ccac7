#include "expwalk/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "expwalk/error.hpp"

namespace expwalk {

IntDistribution::IntDistribution(std::int64_t offset, std::vector<double> probabilities)
    : offset_(offset), probs_(std::move(probabilities)) {
  KahanSum total;
  for (double p : probs_) {
    require(std::isfinite(p) && p >= 0.0, ErrorKind::InvalidParameter,
            "probabilities must be finite and non-negative");
    total += p;
  }
  require(std::abs(total.value() - 1.0) <= kMassTolerance, ErrorKind::InvalidParameter,
          "probabilities sum to " + std::to_string(total.value()) + ", not 1");
  auto first = std::find_if(probs_.begin(), probs_.end(), [](double p) { return p > 0; });
  auto last = std::find_if(probs_.rbegin(), probs_.rend(), [](double p) { return p > 0; });
  const auto lead = first - probs_.begin();
  const auto trail = last - probs_.rbegin();
  probs_.erase(probs_.end() - trail, probs_.end());
  probs_.erase(probs_.begin(), probs_.begin() + lead);
  offset_ += lead;
}

IntDistribution IntDistribution::from_weights(std::int64_t offset,
                                              std::vector<double> weights) {
  KahanSum total;
  for (double w : weights) total += w;
  require(total.value() > 0.0, ErrorKind::InvalidParameter, "weights sum to zero");
  const double inv = 1.0 / total.value();
  for (double& w : weights) w *= inv;
  return IntDistribution(offset, std::move(weights));
}

IntDistribution IntDistribution::point_mass(std::int64_t k) { return {k, {1.0}}; }

IntDistribution IntDistribution::bernoulli(double p) {
  require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidParameter, "p must lie in [0,1]");
  return {0, {1.0 - p, p}};
}

IntDistribution IntDistribution::binomial(std::int64_t trials, double p) {
  require(trials >= 0, ErrorKind::InvalidParameter, "trials must be >= 0");
  require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidParameter, "p must lie in [0,1]");
  if (p == 0.0) return point_mass(0);
  if (p == 1.0) return point_mass(trials);
  std::vector<double> w(static_cast<std::size_t>(trials) + 1);
  const double n = static_cast<double>(trials);
  const double lp = std::log(p), lq = std::log1p(-p);
  for (std::int64_t k = 0; k <= trials; ++k) {
    const double kk = static_cast<double>(k);
    w[static_cast<std::size_t>(k)] =
        std::exp(std::lgamma(n + 1) - std::lgamma(kk + 1) - std::lgamma(n - kk + 1) +
                 kk * lp + (n - kk) * lq);
  }
  return from_weights(0, std::move(w));
}

IntDistribution IntDistribution::shifted(std::int64_t by) const {
  IntDistribution out = *this;
  out.offset_ += by;
  return out;
}

double tv_distance(const IntDistribution& p, const IntDistribution& q) {
  const std::int64_t lo = std::min(p.lo(), q.lo());
  const std::int64_t hi = std::max(p.hi(), q.hi());
  KahanSum s;
  for (std::int64_t k = lo; k <= hi; ++k) s += std::abs(p.at(k) - q.at(k));
  return std::clamp(0.5 * s.value(), 0.0, 1.0);
}

Moments moments(const IntDistribution& p) {
  const auto probs = p.probabilities();
  KahanSum m1;
  for (std::size_t j = 0; j < probs.size(); ++j) m1 += static_cast<double>(j) * probs[j];
  const double rel_mean = m1.value();
  KahanSum m2;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    const double dj = static_cast<double>(j) - rel_mean;
    m2 += dj * dj * probs[j];
  }
  return {static_cast<double>(p.offset()) + rel_mean, m2.value()};
}

IntDistribution convolve(const IntDistribution& p, const IntDistribution& q) {
  const auto a = p.probabilities();
  const auto b = q.probabilities();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return IntDistribution::from_weights(p.offset() + q.offset(), std::move(out));
}

std::string to_csv(const IntDistribution& p) {
  std::string out = "k,probability\n";
  char buf[64];
  for (std::int64_t k = p.lo(); k <= p.hi(); ++k) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n", static_cast<long long>(k), p.at(k));
    out += buf;
  }
  return out;
}

double normal_density(double x, double mean, double variance) {
  const double z = x - mean;
  return std::exp(-z * z / (2.0 * variance)) /
         std::sqrt(2.0 * std::numbers::pi * variance);
}

DiscretizedNormal discretized_normal(double mu, double sigma2) {
  require(sigma2 > 0.0 && std::isfinite(sigma2), ErrorKind::InvalidParameter,
          "discretized normal needs sigma2 > 0");
  const double sigma = std::sqrt(sigma2);
  const auto lo = static_cast<std::int64_t>(std::ceil(mu - kNormalWindowSigmas * sigma));
  const auto hi = static_cast<std::int64_t>(std::floor(mu + kNormalWindowSigmas * sigma));
  std::vector<double> w(static_cast<std::size_t>(hi - lo + 1));
  KahanSum d;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double v = normal_density(static_cast<double>(k), mu, sigma2);
    w[static_cast<std::size_t>(k - lo)] = v;
    d += v;
  }
  DiscretizedNormal out;
  out.mu = mu;
  out.sigma2 = sigma2;
  out.normalizer = d.value();
  out.law = IntDistribution::from_weights(lo, std::move(w));
  return out;
}

BoundReport normalizer_bound_check(double mu, double sigma2) {
  require(sigma2 >= 1.0, ErrorKind::OutOfHypothesis,
          "normalizer bound needs sigma2 >= 1");
  const auto dn = discretized_normal(mu, sigma2);
  return BoundReport::make(std::abs(1.0 - dn.normalizer),
                           1.0 / (std::sqrt(2.0 * std::numbers::pi * sigma2)),
                           "normalizing constant of the discretized normal");
}

std::complex<double> char_fn(const IntDistribution& p, double theta) {
  const auto probs = p.probabilities();
  const std::complex<double> w = std::polar(1.0, theta);
  std::complex<double> acc = 0.0;
  for (std::size_t j = probs.size(); j-- > 0;) acc = acc * w + probs[j];
  return acc * std::polar(1.0, theta * static_cast<double>(p.offset()));
}

std::complex<double> normal_char(double mean, double variance, double theta) {
  return std::polar(std::exp(-0.5 * variance * theta * theta), theta * mean);
}

std::complex<double> wrapped_normal_char(double mean, double variance, double theta) {
  constexpr double kCutoff = 1e-18;
  std::complex<double> acc = normal_char(mean, variance, theta);
  for (int sign : {1, -1}) {
    for (long k = 1;; ++k) {
      const double shifted = theta + sign * 2.0 * std::numbers::pi * static_cast<double>(k);
      const auto term = normal_char(mean, variance, shifted);
      if (std::abs(term) < kCutoff) break;
      acc += term;
    }
  }
  return acc;
}

double wrapped_tail_bound(double variance) {
  const double e = std::exp(-variance);
  return 2.0 * e / (1.0 - e);
}

double l2_char_distance(const IntDistribution& p, double mean, double variance) {
  require(variance > 0.0, ErrorKind::InvalidParameter, "variance must be positive");
  const double sigma = std::sqrt(variance);
  const auto lo = std::min(
      p.lo(), static_cast<std::int64_t>(std::floor(mean - kNormalWindowSigmas * sigma)) - 1);
  const auto hi = std::max(
      p.hi(), static_cast<std::int64_t>(std::ceil(mean + kNormalWindowSigmas * sigma)) + 1);
  KahanSum s;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double diff = p.at(k) - normal_density(static_cast<double>(k), mean, variance);
    s += diff * diff;
  }
  return std::sqrt(s.value());
}

double l2_char_distance_quadrature(const IntDistribution& p, double mean,
                                   double variance) {
  require(variance > 0.0, ErrorKind::InvalidParameter, "variance must be positive");
  constexpr int n = kParsevalPanels;
  const double a = -std::numbers::pi;
  const double h = 2.0 * std::numbers::pi / n;
  KahanSum s;
  for (int i = 0; i <= n; ++i) {
    const double theta = a + h * i;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::norm(char_fn(p, theta) - wrapped_normal_char(mean, variance, theta));
  }
  const double integral = s.value() * h / 3.0;
  return std::sqrt(integral / (2.0 * std::numbers::pi));
}

BoundReport parseval_check(const IntDistribution& p, double mean, double variance) {
  require(variance > 0.0, ErrorKind::InvalidParameter, "variance must be positive");
  const double sum_form = l2_char_distance(p, mean, variance);
  const double quad_form = l2_char_distance_quadrature(p, mean, variance);
  char buf[160];
  std::snprintf(buf, sizeof buf, "Parseval: sum form %.17g vs quadrature %.17g",
                sum_form, quad_form);
  return BoundReport::make(std::abs(sum_form - quad_form), kParsevalTolerance, buf);
}

}  // namespace expwalk
