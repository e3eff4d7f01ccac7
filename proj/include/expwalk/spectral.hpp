#pragma once

#include <span>
#include <vector>

#include "expwalk/graph.hpp"
#include "expwalk/matrix.hpp"
#include "expwalk/report.hpp"

namespace expwalk {

/// Eigendecomposition of the walk operator P = A/d.
///
/// eigenvalues are sorted descending; eigenvectors[j] is normalised under
/// <f,g>_pi = (1/n) sum_x f(x) g(x), so eigenvectors[0] is the constant 1.
/// Within a repeated eigenvalue the basis is an arbitrary orthonormal one;
/// only basis-free quantities (projections, powers) should depend on it.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
  double lambda_star = 0.0;

  std::size_t size() const { return eigenvalues.size(); }
};

/// Tuning for the cyclic Jacobi solver.
struct JacobiOptions {
  double tolerance = 1e-12;
  int max_sweeps = 10'000;
};

struct SymmetricEigen {
  std::vector<double> values;               // unsorted
  std::vector<std::vector<double>> vectors; // unit Euclidean norm
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix. Throws NumericFailure if the
/// off-diagonal Frobenius norm is not below tolerance after max_sweeps.
SymmetricEigen jacobi_eigen(const Matrix& symmetric, const JacobiOptions& opts = {});

Matrix transition_matrix(const RegularGraph& g);

Spectrum spectrum(const RegularGraph& g, const JacobiOptions& opts = {});

double lambda_star(const Spectrum& s);
bool is_expander(const Spectrum& s, double lambda);

/// P^t f via sum_j <f, f_j>_pi f_j lambda_j^t.
std::vector<double> spectral_apply(const Spectrum& s, std::span<const double> f,
                                   int t);

/// Unweighted inner product sum_x pi_B(x) f_j(x) for every j.
std::vector<double> uniform_set_projections(const Spectrum& s, const VertexSet& set);

/// P(X_k in B) for the walk started uniformly on B, via the spectral formula.
double return_to_set_probability(const RegularGraph& g, const Spectrum& s,
                                 const VertexSet& set, int k);
double return_to_set_probability(const RegularGraph& g, const VertexSet& set,
                                 int k);

/// |E(F1,F2)| counting ordered pairs, so edges inside F1 ∩ F2 count twice.
std::size_t edges_between(const RegularGraph& g, const VertexSet& f1,
                          const VertexSet& f2);

BoundReport mixing_lemma_check(const RegularGraph& g, const Spectrum& s,
                               const VertexSet& f1, const VertexSet& f2);
BoundReport mixing_corollary_check(const RegularGraph& g, const Spectrum& s,
                                   const VertexSet& f1);

}  // namespace expwalk
