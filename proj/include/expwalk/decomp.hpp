#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expwalk/graph.hpp"
#include "expwalk/report.hpp"
#include "expwalk/spectral.hpp"

namespace expwalk {

enum class ClassSide { A, B };

const char* to_string(ClassSide side);

/// A neighbour-count class large enough to seed the 2-cycle decomposition.
struct KStarResult {
  std::size_t k_star = 0;
  ClassSide side = ClassSide::A;
  std::size_t class_size = 0;
  double threshold = 0.0;
  double delta = 0.0;
  VertexSet members;
};

/// Scans k = 1..d-1 on both sides; picks the qualifying class of largest size,
/// then smaller k, then side A. Throws LemmaViolation if none qualifies.
KStarResult find_kstar(const RegularGraph& g, const Labelling& lab, bool balanced);

struct ExpectedVisits {
  double expected = 0.0;
  /// Only for balanced labellings.
  std::optional<double> lower_bound;
};

/// floor(t/2) pi(class); throws LemmaViolation if below the balanced lower bound.
ExpectedVisits expected_visits(const RegularGraph& g, const Labelling& lab,
                               const KStarResult& kstar, int t);

/// Per-walk bookkeeping of the 2-cycle split z = s_prime + y.
struct DecompositionTrace {
  int t = 0;
  std::int64_t n_t = 0;
  std::int64_t n_tilde = 0;
  std::int64_t b_t = 0;
  std::int64_t s_prime = 0;
  std::int64_t s_full = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;
};

/// Constants shared by every sample of one experiment.
struct DecompositionSetup {
  int t = 0;
  double expected_n = 0.0;
  double expected_n_tilde = 0.0;
  std::int64_t b_t = 0;
  /// Probability that a cycle's middle vertex is labelled 1: (d - k*)/d.
  double success_p = 0.0;
};

DecompositionSetup decomposition_setup(const RegularGraph& g, const Labelling& lab,
                                       const KStarResult& kstar, int t);

/// One walk X_0..X_t from the uniform start. X_t only closes the last 2-cycle
/// window and does not contribute to z.
DecompositionTrace decomposition_sample(const RegularGraph& g, const Labelling& lab,
                                        const KStarResult& kstar, int t,
                                        std::uint64_t seed);

/// samples traces, trace i seeded with derive_seed(seed, "decomp", i).
std::vector<DecompositionTrace> decomposition_batch(const RegularGraph& g,
                                                    const Labelling& lab,
                                                    const KStarResult& kstar, int t,
                                                    std::size_t samples,
                                                    std::uint64_t seed);

inline constexpr std::size_t kMinDecompositionSamples = 10'000;

// Monte Carlo checks. The 3-standard-error slack is added to rhs.
BoundReport concentration_check(const RegularGraph& g, const Labelling& lab,
                                const KStarResult& kstar,
                                std::span<const DecompositionTrace> traces);
BoundReport defect_estimate(const RegularGraph& g, const Labelling& lab,
                            const KStarResult& kstar,
                            std::span<const DecompositionTrace> traces);

struct SFullReport {
  BoundReport chi_square;
  BoundReport correlation;
  std::size_t degrees_of_freedom = 0;
  bool holds() const { return chi_square.holds && correlation.holds; }
};

inline constexpr double kMaxSfullCorrelation = 0.02;

SFullReport sfull_distribution_check(const RegularGraph& g, const Labelling& lab,
                                     const KStarResult& kstar,
                                     std::span<const DecompositionTrace> traces);

BoundReport concentration_check(const RegularGraph& g, const Labelling& lab,
                                const KStarResult& kstar, int t, std::size_t samples,
                                std::uint64_t seed);
BoundReport defect_estimate(const RegularGraph& g, const Labelling& lab,
                            const KStarResult& kstar, int t, std::size_t samples,
                            std::uint64_t seed);
SFullReport sfull_distribution_check(const RegularGraph& g, const Labelling& lab,
                                     const KStarResult& kstar, int t,
                                     std::size_t samples, std::uint64_t seed);

/// p(1-p)(1-cos theta0), after checking |E e^{i theta V}| <= 1 - eta on a
/// 200-point grid of theta0 <= |theta| <= pi (LemmaViolation otherwise).
double bernoulli_eta(double p_success, double theta0);

/// "seed_index,n_t,n_tilde,b_t,s_prime,s_full,y,z" rows.
std::string to_csv(std::span<const DecompositionTrace> traces);

}  // namespace expwalk
