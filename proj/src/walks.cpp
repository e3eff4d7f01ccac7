#include "expwalk/walks.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "expwalk/error.hpp"
#include "expwalk/rng.hpp"

namespace expwalk {
namespace {

constexpr double kStochasticTol = 1e-12;

struct Step {
  std::size_t to;
  double prob;
};

std::vector<std::vector<Step>> sparse_rows(const Matrix& p) {
  std::vector<std::vector<Step>> rows(p.rows());
  for (std::size_t u = 0; u < p.rows(); ++u)
    for (std::size_t v = 0; v < p.cols(); ++v)
      if (p(u, v) > 0.0) rows[u].push_back({v, p(u, v)});
  return rows;
}

std::size_t sample_index(std::span<const double> probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // Rounding left u above the last partial sum: take the last positive entry.
  for (std::size_t i = probs.size(); i-- > 0;)
    if (probs[i] > 0.0) return i;
  return 0;
}

}  // namespace

void FiniteChain::validate() const {
  const std::size_t m = initial.size();
  require(m > 0, ErrorKind::InvalidParameter, "chain has no states");
  require(transition.rows() == m && transition.cols() == m, ErrorKind::InvalidParameter,
          "transition matrix must be states x states");
  require(valuation.size() == m, ErrorKind::InvalidParameter,
          "valuation length must equal the number of states");
  KahanSum init;
  for (double x : initial) {
    require(x >= 0.0, ErrorKind::InvalidParameter, "negative initial probability");
    init += x;
  }
  require(std::abs(init.value() - 1.0) <= kStochasticTol, ErrorKind::InvalidParameter,
          "initial distribution does not sum to 1");
  for (std::size_t u = 0; u < m; ++u) {
    KahanSum row;
    for (double x : transition.row(u)) {
      require(x >= 0.0, ErrorKind::InvalidParameter, "negative transition probability");
      row += x;
    }
    require(std::abs(row.value() - 1.0) <= kStochasticTol, ErrorKind::InvalidParameter,
            "transition row " + std::to_string(u) + " does not sum to 1");
  }
}

FiniteChain walk_chain(const RegularGraph& g, const Labelling& lab) {
  require(lab.size() == g.n(), ErrorKind::InvalidParameter,
          "labelling length does not match graph size");
  FiniteChain c;
  c.transition = Matrix(g.n(), g.n());
  const double w = 1.0 / static_cast<double>(g.d());
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : g.neighbors(u)) c.transition(u, v) = w;
  c.initial.assign(g.n(), 1.0 / static_cast<double>(g.n()));
  c.valuation.assign(lab.values().begin(), lab.values().end());
  return c;
}

FiniteChain sticky_chain(double p) {
  require(p > -1.0 && p < 1.0, ErrorKind::InvalidParameter, "sticky chain needs |p| < 1");
  FiniteChain c;
  c.transition = Matrix(2, 2);
  c.transition(0, 0) = c.transition(1, 1) = (1.0 + p) / 2.0;
  c.transition(0, 1) = c.transition(1, 0) = (1.0 - p) / 2.0;
  c.initial = {0.5, 0.5};
  c.valuation = {0, 1};
  return c;
}

FiniteChain two_step_chain(const FiniteChain& c) {
  c.validate();
  FiniteChain out = c;
  out.transition = c.transition * c.transition;
  return out;
}

std::vector<IntDistribution> exact_weight_laws(const FiniteChain& c,
                                               std::span<const int> ts,
                                               std::size_t budget_bytes) {
  c.validate();
  require(!ts.empty(), ErrorKind::InvalidParameter, "empty t grid");
  for (int t : ts) require(t >= 1, ErrorKind::InvalidParameter, "t must be >= 1");
  const int t_max = *std::max_element(ts.begin(), ts.end());

  const std::size_t m = c.states();
  const int fmin = *std::min_element(c.valuation.begin(), c.valuation.end());
  const int fmax = *std::max_element(c.valuation.begin(), c.valuation.end());
  const auto range = static_cast<std::size_t>(fmax - fmin);
  const std::size_t width = static_cast<std::size_t>(t_max) * range + 1;

  const long double need = 2.0L * m * width * sizeof(double);
  require(need <= static_cast<long double>(budget_bytes), ErrorKind::ResourceExceeded,
          "weight-law table needs " + std::to_string(static_cast<double>(need)) +
              " bytes, budget is " + std::to_string(budget_bytes));

  // Layer after i+1 terms: cur[v * width + j] = P(X_i = v, Z_{i+1} = (i+1) fmin + j).
  std::vector<double> cur(m * width, 0.0), next(m * width, 0.0);
  for (std::size_t v = 0; v < m; ++v)
    cur[v * width + static_cast<std::size_t>(c.valuation[v] - fmin)] = c.initial[v];
  const auto rows = sparse_rows(c.transition);

  std::map<int, IntDistribution> snapshots;
  auto snapshot = [&](int terms) {
    const std::size_t live = static_cast<std::size_t>(terms) * range + 1;
    std::vector<double> law(live, 0.0);
    for (std::size_t v = 0; v < m; ++v)
      for (std::size_t j = 0; j < live; ++j) law[j] += cur[v * width + j];
    snapshots.emplace(terms, IntDistribution(static_cast<std::int64_t>(terms) * fmin,
                                             std::move(law)));
  };
  const auto wanted = [&](int terms) {
    return std::find(ts.begin(), ts.end(), terms) != ts.end();
  };

  if (wanted(1)) snapshot(1);
  for (int terms = 1; terms < t_max; ++terms) {
    const std::size_t live = static_cast<std::size_t>(terms) * range + 1;
    const std::size_t next_live = live + range;
    for (std::size_t v = 0; v < m; ++v)
      std::fill_n(next.begin() + static_cast<std::ptrdiff_t>(v * width), next_live, 0.0);
    for (std::size_t u = 0; u < m; ++u) {
      const double* src = cur.data() + u * width;
      for (const Step& s : rows[u]) {
        double* dst = next.data() + s.to * width +
                      static_cast<std::size_t>(c.valuation[s.to] - fmin);
        const double p = s.prob;
        for (std::size_t j = 0; j < live; ++j) dst[j] += p * src[j];
      }
    }
    std::swap(cur, next);
    if (wanted(terms + 1)) snapshot(terms + 1);
  }

  std::vector<IntDistribution> out;
  out.reserve(ts.size());
  for (int t : ts) out.push_back(snapshots.at(t));
  return out;
}

IntDistribution exact_weight_law(const FiniteChain& c, int t, std::size_t budget_bytes) {
  require(t >= 1, ErrorKind::InvalidParameter, "t must be >= 1");
  const int ts[] = {t};
  return exact_weight_laws(c, ts, budget_bytes).front();
}

double sticky_variance_closed_form(double p, int t) {
  require(p > -1.0 && p < 1.0, ErrorKind::InvalidParameter, "sticky chain needs |p| < 1");
  require(t >= 1, ErrorKind::InvalidParameter, "t must be >= 1");
  const double tt = static_cast<double>(t);
  const double q = 1.0 - p;
  return (std::pow(p, t + 1) - p * (tt + 1.0) + tt) / (2.0 * q * q) - tt / 4.0;
}

WalkSample sample_walk(const FiniteChain& c, int t, std::uint64_t seed) {
  require(t >= 1, ErrorKind::InvalidParameter, "t must be >= 1");
  CounterRng rng(derive_seed(seed, "walk-steps"));
  WalkSample out;
  out.seed = seed;
  out.vertices.reserve(static_cast<std::size_t>(t));
  auto x = sample_index(c.initial, rng.uniform());
  out.vertices.push_back(static_cast<std::uint32_t>(x));
  for (int i = 1; i < t; ++i) {
    x = sample_index(c.transition.row(x), rng.uniform());
    out.vertices.push_back(static_cast<std::uint32_t>(x));
  }
  return out;
}

std::vector<WalkSample> sample_walks(const FiniteChain& c, int t, std::uint64_t seed,
                                     std::size_t count) {
  c.validate();
  std::vector<WalkSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(sample_walk(c, t, derive_seed(seed, "walk", i)));
  return out;
}

IntDistribution empirical_law(std::span<const WalkSample> samples,
                              std::span<const int> valuation) {
  require(!samples.empty(), ErrorKind::InvalidParameter, "no samples");
  std::vector<std::int64_t> sums;
  sums.reserve(samples.size());
  for (const auto& s : samples) {
    std::int64_t z = 0;
    for (auto v : s.vertices) {
      require(v < valuation.size(), ErrorKind::InvalidParameter,
              "sample state outside the valuation");
      z += valuation[v];
    }
    sums.push_back(z);
  }
  const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
  std::vector<double> counts(static_cast<std::size_t>(*hi - *lo + 1), 0.0);
  for (auto z : sums) counts[static_cast<std::size_t>(z - *lo)] += 1.0;
  return IntDistribution::from_weights(*lo, std::move(counts));
}

}  // namespace expwalk
