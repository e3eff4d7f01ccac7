#include "expwalk/decomp.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "expwalk/clt.hpp"
#include "expwalk/dist.hpp"
#include "expwalk/error.hpp"
#include "expwalk/rng.hpp"

namespace expwalk {
namespace {

void require_traces(std::span<const DecompositionTrace> traces) {
  require(traces.size() >= kMinDecompositionSamples, ErrorKind::InvalidParameter,
          "Monte Carlo checks need at least " +
              std::to_string(kMinDecompositionSamples) + " samples");
  for (const auto& tr : traces)
    require(tr.t == traces.front().t, ErrorKind::InvalidParameter,
            "traces mix different walk lengths");
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[200];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

}  // namespace

const char* to_string(ClassSide side) { return side == ClassSide::A ? "A" : "B"; }

KStarResult find_kstar(const RegularGraph& g, const Labelling& lab, bool balanced) {
  require(lab.size() == g.n(), ErrorKind::InvalidParameter,
          "labelling length does not match graph size");
  require(lab.ones() > 0 && lab.ones() < lab.size(), ErrorKind::OutOfHypothesis,
          "label density alpha must lie strictly between 0 and 1");
  require(!balanced || lab.balanced(), ErrorKind::OutOfHypothesis,
          "the balanced class bound needs a balanced labelling");
  const auto s = spectrum(g);
  require(s.lambda_star < 1.0 - 1e-12, ErrorKind::OutOfHypothesis,
          "graph is not an expander (lambda* = 1)");
  const double gap = 1.0 - s.lambda_star;
  const double alpha = lab.alpha();
  const double delta = balanced ? gap * gap / 3.0 : 0.25 * gap * gap * alpha * (1.0 - alpha);
  const double d1 = static_cast<double>(g.d() - 1);
  const double thr_a = delta * static_cast<double>(lab.size() - lab.ones()) / d1;
  const double thr_b = delta * static_cast<double>(lab.ones()) / d1;
  const auto lc = label_classes(g, lab);

  std::optional<KStarResult> best;
  auto consider = [&](std::size_t k, ClassSide side, const VertexSet& members,
                      double threshold) {
    if (static_cast<double>(members.size()) < threshold - 1e-12) return;
    if (best && members.size() <= best->class_size) return;
    best = KStarResult{k, side, members.size(), threshold, delta, members};
  };
  for (std::size_t k = 1; k + 1 <= g.d(); ++k) {
    consider(k, ClassSide::A, lc.a_classes[k], thr_a);
    consider(k, ClassSide::B, lc.b_classes[k], thr_b);
  }
  if (!best)
    fail(ErrorKind::LemmaViolation, "no neighbour-count class meets the size threshold");
  return *best;
}

ExpectedVisits expected_visits(const RegularGraph& g, const Labelling& lab,
                               const KStarResult& kstar, int t) {
  require(t >= 2, ErrorKind::InvalidParameter, "t must be >= 2");
  ExpectedVisits out;
  out.expected = static_cast<double>(t / 2) * static_cast<double>(kstar.class_size) /
                 static_cast<double>(g.n());
  if (lab.balanced()) {
    const double gap = 1.0 - spectrum(g).lambda_star;
    out.lower_bound = gap * gap * (t - 2) / (12.0 * static_cast<double>(g.d() - 1));
    require(out.expected >= *out.lower_bound - 1e-12, ErrorKind::LemmaViolation,
            "expected class visits fall below the guaranteed lower bound");
  }
  return out;
}

DecompositionSetup decomposition_setup(const RegularGraph& g, const Labelling& lab,
                                       const KStarResult& kstar, int t) {
  require(t >= 4, ErrorKind::InvalidParameter, "decomposition needs t >= 4");
  DecompositionSetup s;
  s.t = t;
  s.expected_n = expected_visits(g, lab, kstar, t).expected;
  s.expected_n_tilde = s.expected_n / static_cast<double>(g.d());
  s.b_t = static_cast<std::int64_t>(std::floor(s.expected_n_tilde / 4.0));
  s.success_p = static_cast<double>(g.d() - kstar.k_star) / static_cast<double>(g.d());
  return s;
}

namespace {

DecompositionTrace sample_with(const RegularGraph& g, const Labelling& lab,
                               const std::vector<bool>& in_class,
                               const DecompositionSetup& setup, std::uint64_t seed) {
  const int t = setup.t;
  CounterRng walk_rng(derive_seed(seed, "decomp-walk"));
  std::vector<Vertex> x(static_cast<std::size_t>(t) + 1);
  x[0] = static_cast<Vertex>(walk_rng.below(g.n()));
  for (int i = 1; i <= t; ++i) {
    const auto nb = g.neighbors(x[i - 1]);
    x[i] = nb[walk_rng.below(nb.size())];
  }

  DecompositionTrace tr;
  tr.t = t;
  tr.b_t = setup.b_t;
  for (int i = 0; i < t; ++i) tr.z += lab[x[i]];
  for (int i = 0; i < t / 2; ++i) {
    if (!in_class[x[2 * i]]) continue;
    ++tr.n_t;
    if (x[2 * i] != x[2 * i + 2]) continue;
    ++tr.n_tilde;
    if (tr.n_tilde <= tr.b_t) tr.s_prime += lab[x[2 * i + 1]];
  }
  tr.s_full = tr.s_prime;
  CounterRng topup_rng(derive_seed(seed, "decomp-topup"));
  for (std::int64_t j = tr.n_tilde; j < tr.b_t; ++j)
    tr.s_full += topup_rng.bernoulli(setup.success_p);
  tr.y = tr.z - tr.s_prime;
  return tr;
}

std::vector<bool> class_mask(const RegularGraph& g, const KStarResult& kstar) {
  std::vector<bool> mask(g.n(), false);
  for (Vertex v : kstar.members) mask[v] = true;
  return mask;
}

}  // namespace

DecompositionTrace decomposition_sample(const RegularGraph& g, const Labelling& lab,
                                        const KStarResult& kstar, int t,
                                        std::uint64_t seed) {
  const auto setup = decomposition_setup(g, lab, kstar, t);
  return sample_with(g, lab, class_mask(g, kstar), setup, seed);
}

std::vector<DecompositionTrace> decomposition_batch(const RegularGraph& g,
                                                    const Labelling& lab,
                                                    const KStarResult& kstar, int t,
                                                    std::size_t samples,
                                                    std::uint64_t seed) {
  const auto setup = decomposition_setup(g, lab, kstar, t);
  const auto mask = class_mask(g, kstar);
  std::vector<DecompositionTrace> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i)
    out.push_back(sample_with(g, lab, mask, setup, derive_seed(seed, "decomp", i)));
  return out;
}

BoundReport concentration_check(const RegularGraph& g, const Labelling& lab,
                                const KStarResult& kstar,
                                std::span<const DecompositionTrace> traces) {
  require_traces(traces);
  const int t = traces.front().t;
  require(t >= 8, ErrorKind::InvalidParameter, "concentration check needs t >= 8");
  const auto setup = decomposition_setup(g, lab, kstar, t);
  const double cut = setup.expected_n_tilde / 4.0;
  std::size_t hits = 0;
  for (const auto& tr : traces) hits += static_cast<double>(tr.n_tilde) <= cut;
  const double n = static_cast<double>(traces.size());
  const double freq = static_cast<double>(hits) / n;
  const double se = std::sqrt(freq * (1.0 - freq) / n);
  const double gap = 1.0 - spectrum(g).lambda_star;
  const double d = static_cast<double>(g.d());
  const double bound = 5.0 * std::exp(-std::pow(gap, 5) / (11520.0 * d * d) * (t - 4));
  return BoundReport::make(freq, bound + 3.0 * se,
                           fmt("few 2-cycles: bound %.17g plus 3 s.e. %.17g", bound,
                               3.0 * se));
}

BoundReport defect_estimate(const RegularGraph& g, const Labelling& lab,
                            const KStarResult&,
                            std::span<const DecompositionTrace> traces) {
  require_traces(traces);
  const int t = traces.front().t;
  require(t >= 8, ErrorKind::InvalidParameter, "defect estimate needs t >= 8");
  const double m = paper_constants(spectrum(g).lambda_star, g.d(), lab.alpha()).m_defect;
  KahanSum m1, m2;
  for (const auto& tr : traces) {
    const double v = static_cast<double>(std::llabs(tr.s_prime - tr.s_full));
    m1 += v;
    m2 += v * v;
  }
  const double n = static_cast<double>(traces.size());
  const double mean = m1.value() / n;
  const double var = std::max(0.0, m2.value() / n - mean * mean);
  const double se = std::sqrt(var / n);
  const double bound = m / t;
  return BoundReport::make(mean, bound + 3.0 * se,
                           fmt("decomposition defect: M/t %.17g plus 3 s.e. %.17g",
                               bound, 3.0 * se));
}

SFullReport sfull_distribution_check(const RegularGraph& g, const Labelling& lab,
                                     const KStarResult& kstar,
                                     std::span<const DecompositionTrace> traces) {
  require_traces(traces);
  const auto setup = decomposition_setup(g, lab, kstar, traces.front().t);
  const std::int64_t b = setup.b_t;
  const double n = static_cast<double>(traces.size());

  std::vector<double> observed(static_cast<std::size_t>(b) + 1, 0.0);
  for (const auto& tr : traces) {
    require(tr.s_full >= 0 && tr.s_full <= b, ErrorKind::LemmaViolation,
            "s_full outside {0, ..., b_t}");
    observed[static_cast<std::size_t>(tr.s_full)] += 1.0;
  }
  const auto law = IntDistribution::binomial(b, setup.success_p);

  // Pool adjacent cells until each expected count reaches 5.
  std::vector<double> obs_cells, exp_cells;
  double o = 0.0, e = 0.0;
  for (std::int64_t k = 0; k <= b; ++k) {
    o += observed[static_cast<std::size_t>(k)];
    e += n * law.at(k);
    if (e >= 5.0) {
      obs_cells.push_back(o);
      exp_cells.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp_cells.empty()) {
      obs_cells.push_back(o);
      exp_cells.push_back(e);
    } else {
      obs_cells.back() += o;
      exp_cells.back() += e;
    }
  }

  SFullReport out;
  if (exp_cells.size() < 2) {
    out.chi_square = BoundReport::make(0.0, 0.0, "s_full is degenerate (b_t = 0)");
  } else {
    double stat = 0.0;
    for (std::size_t i = 0; i < exp_cells.size(); ++i) {
      const double diff = obs_cells[i] - exp_cells[i];
      stat += diff * diff / exp_cells[i];
    }
    out.degrees_of_freedom = exp_cells.size() - 1;
    const boost::math::chi_squared_distribution<double> chi(
        static_cast<double>(out.degrees_of_freedom));
    const double q = boost::math::quantile(chi, 0.999);
    out.chi_square = BoundReport::make(
        stat, q, fmt("chi-square of s_full against Bin(b_t, p), %.0f df, p = %.17g",
                     static_cast<double>(out.degrees_of_freedom), setup.success_p));
  }

  KahanSum sx, sy;
  for (const auto& tr : traces) {
    sx += static_cast<double>(tr.s_full);
    sy += static_cast<double>(tr.y);
  }
  const double mx = sx.value() / n, my = sy.value() / n;
  KahanSum cxy, cxx, cyy;
  for (const auto& tr : traces) {
    const double dx = static_cast<double>(tr.s_full) - mx;
    const double dy = static_cast<double>(tr.y) - my;
    cxy += dx * dy;
    cxx += dx * dx;
    cyy += dy * dy;
  }
  const double denom = std::sqrt(cxx.value() * cyy.value());
  const double corr = denom > 0.0 ? cxy.value() / denom : 0.0;
  out.correlation = BoundReport::make(std::abs(corr), kMaxSfullCorrelation,
                                      "|corr(s_full, y)|");
  return out;
}

BoundReport concentration_check(const RegularGraph& g, const Labelling& lab,
                                const KStarResult& kstar, int t, std::size_t samples,
                                std::uint64_t seed) {
  require(samples >= kMinDecompositionSamples, ErrorKind::InvalidParameter,
          "undersized sample");
  return concentration_check(g, lab, kstar,
                             decomposition_batch(g, lab, kstar, t, samples, seed));
}

BoundReport defect_estimate(const RegularGraph& g, const Labelling& lab,
                            const KStarResult& kstar, int t, std::size_t samples,
                            std::uint64_t seed) {
  require(samples >= kMinDecompositionSamples, ErrorKind::InvalidParameter,
          "undersized sample");
  return defect_estimate(g, lab, kstar,
                         decomposition_batch(g, lab, kstar, t, samples, seed));
}

SFullReport sfull_distribution_check(const RegularGraph& g, const Labelling& lab,
                                     const KStarResult& kstar, int t,
                                     std::size_t samples, std::uint64_t seed) {
  require(samples >= kMinDecompositionSamples, ErrorKind::InvalidParameter,
          "undersized sample");
  return sfull_distribution_check(g, lab, kstar,
                                  decomposition_batch(g, lab, kstar, t, samples, seed));
}

double bernoulli_eta(double p_success, double theta0) {
  require(p_success > 0.0 && p_success < 1.0, ErrorKind::InvalidParameter,
          "success probability must lie in (0, 1)");
  require(theta0 > 0.0 && theta0 <= std::numbers::pi, ErrorKind::InvalidParameter,
          "theta0 must lie in (0, pi]");
  const double eta = p_success * (1.0 - p_success) * (1.0 - std::cos(theta0));
  constexpr int kGrid = 200;
  for (int i = 0; i < kGrid; ++i) {
    const double theta =
        kGrid == 1 ? theta0 : theta0 + (std::numbers::pi - theta0) * i / (kGrid - 1);
    for (double th : {theta, -theta}) {
      const std::complex<double> cf =
          (1.0 - p_success) + p_success * std::polar(1.0, th);
      require(std::abs(cf) <= 1.0 - eta + 1e-15, ErrorKind::LemmaViolation,
              "Bernoulli characteristic function exceeds 1 - eta");
    }
  }
  return eta;
}

std::string to_csv(std::span<const DecompositionTrace> traces) {
  std::string out = "seed_index,n_t,n_tilde,b_t,s_prime,s_full,y,z\n";
  char buf[200];
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& tr = traces[i];
    std::snprintf(buf, sizeof buf, "%zu,%lld,%lld,%lld,%lld,%lld,%lld,%lld\n", i,
                  static_cast<long long>(tr.n_t), static_cast<long long>(tr.n_tilde),
                  static_cast<long long>(tr.b_t), static_cast<long long>(tr.s_prime),
                  static_cast<long long>(tr.s_full), static_cast<long long>(tr.y),
                  static_cast<long long>(tr.z));
    out += buf;
  }
  return out;
}

}  // namespace expwalk
