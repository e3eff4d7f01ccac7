#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "expwalk/dist.hpp"
#include "expwalk/graph.hpp"
#include "expwalk/matrix.hpp"

namespace expwalk {

/// Finite Markov chain with an integer valuation on its states.
struct FiniteChain {
  Matrix transition;
  std::vector<double> initial;
  std::vector<int> valuation;

  std::size_t states() const { return initial.size(); }

  /// Throws InvalidParameter unless rows and initial are stochastic (1e-12).
  void validate() const;
};

FiniteChain walk_chain(const RegularGraph& g, const Labelling& lab);
/// Two-state chain that stays put with probability (1+p)/2.
FiniteChain sticky_chain(double p);
FiniteChain two_step_chain(const FiniteChain& c);

inline constexpr std::size_t kDefaultDpBudgetBytes = std::size_t{2} << 30;

/// Exact law of sum_{i<t} f(X_i), X_0 ~ initial.
///
/// Dynamic programming over (state, partial sum) with two live layers; the
/// working set 2 * states * (t * range + 1) doubles must fit in budget_bytes
/// or ResourceExceeded is thrown.
IntDistribution exact_weight_law(const FiniteChain& c, int t,
                                 std::size_t budget_bytes = kDefaultDpBudgetBytes);

/// exact_weight_law at every t in ts from a single pass up to max(ts).
std::vector<IntDistribution> exact_weight_laws(
    const FiniteChain& c, std::span<const int> ts,
    std::size_t budget_bytes = kDefaultDpBudgetBytes);

/// Var(R_t) for the sticky chain.
double sticky_variance_closed_form(double p, int t);

struct WalkSample {
  std::vector<std::uint32_t> vertices;
  std::uint64_t seed = 0;
};

/// t states X_0..X_{t-1} by inverse-CDF steps.
WalkSample sample_walk(const FiniteChain& c, int t, std::uint64_t seed);
/// count independent walks, walk i seeded with derive_seed(seed, "walk", i).
std::vector<WalkSample> sample_walks(const FiniteChain& c, int t, std::uint64_t seed,
                                     std::size_t count);

IntDistribution empirical_law(std::span<const WalkSample> samples,
                              std::span<const int> valuation);

}  // namespace expwalk
