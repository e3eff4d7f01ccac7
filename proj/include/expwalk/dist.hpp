#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "expwalk/report.hpp"

namespace expwalk {

/// Neumaier-compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  KahanSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Probability law on the integers offset, offset+1, ..., stored densely.
///
/// Leading and trailing zero entries are trimmed on construction, and the
/// mass must sum to 1 within kMassTolerance.
class IntDistribution {
 public:
  static constexpr double kMassTolerance = 1e-12;

  IntDistribution(std::int64_t offset, std::vector<double> probabilities);

  /// Normalises arbitrary non-negative weights.
  static IntDistribution from_weights(std::int64_t offset, std::vector<double> weights);
  static IntDistribution point_mass(std::int64_t k);
  static IntDistribution bernoulli(double p);
  /// Exact binomial pmf via log-gamma.
  static IntDistribution binomial(std::int64_t trials, double p);

  std::int64_t offset() const { return offset_; }
  std::int64_t lo() const { return offset_; }
  std::int64_t hi() const { return offset_ + static_cast<std::int64_t>(probs_.size()) - 1; }
  std::size_t size() const { return probs_.size(); }
  std::span<const double> probabilities() const { return probs_; }

  /// P(k), zero outside the support.
  double at(std::int64_t k) const {
    if (k < lo() || k > hi()) return 0.0;
    return probs_[static_cast<std::size_t>(k - offset_)];
  }

  /// Support shifted by an integer.
  IntDistribution shifted(std::int64_t by) const;

  friend bool operator==(const IntDistribution&, const IntDistribution&) = default;

 private:
  std::int64_t offset_;
  std::vector<double> probs_;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

double tv_distance(const IntDistribution& p, const IntDistribution& q);
Moments moments(const IntDistribution& p);
IntDistribution convolve(const IntDistribution& p, const IntDistribution& q);

/// CSV "k,probability" over the full support, 17 significant digits.
std::string to_csv(const IntDistribution& p);

/// Normal density with the given mean and variance.
double normal_density(double x, double mean, double variance);

/// Lattice law proportional to the normal density at the integers,
/// truncated to ceil(mu - 12 sigma) .. floor(mu + 12 sigma).
struct DiscretizedNormal {
  double mu = 0.0;
  double sigma2 = 1.0;
  /// sum_k sigma^-1 phi((k - mu) / sigma) over the window.
  double normalizer = 1.0;
  IntDistribution law = IntDistribution::point_mass(0);
};

inline constexpr double kNormalWindowSigmas = 12.0;

DiscretizedNormal discretized_normal(double mu, double sigma2);

/// |1 - D(mu, sigma2)| against 1/(sqrt(2 pi) sigma); needs sigma2 >= 1.
BoundReport normalizer_bound_check(double mu, double sigma2);

/// E exp(i theta W) for W ~ p.
std::complex<double> char_fn(const IntDistribution& p, double theta);

/// Characteristic function of N(mean, variance) at theta.
std::complex<double> normal_char(double mean, double variance, double theta);

/// sum_k normal_char(theta + 2 pi k), truncated once terms fall below 1e-18.
std::complex<double> wrapped_normal_char(double mean, double variance, double theta);

/// 2 e^{-v} / (1 - e^{-v}): bound on |wrapped - unwrapped| for variance v.
double wrapped_tail_bound(double variance);

/// sqrt(sum_k |p(k) - phi(k)|^2) with phi the N(mean, variance) density.
double l2_char_distance(const IntDistribution& p, double mean, double variance);

/// ((1/2pi) int_{-pi}^{pi} |char_fn(p) - wrapped_normal_char|^2)^{1/2},
/// Simpson's rule with kParsevalPanels panels.
double l2_char_distance_quadrature(const IntDistribution& p, double mean,
                                   double variance);

inline constexpr int kParsevalPanels = 1 << 14;
inline constexpr double kParsevalTolerance = 1e-6;

/// lhs = |sum form - quadrature form|, rhs = kParsevalTolerance.
BoundReport parseval_check(const IntDistribution& p, double mean, double variance);

}  // namespace expwalk
