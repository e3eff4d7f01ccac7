#include "expwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "expwalk/error.hpp"

namespace expwalk {
namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Orientation so the first clearly non-zero component is positive.
void canonical_sign(std::vector<double>& v) {
  for (double x : v) {
    if (std::abs(x) > 1e-9) {
      if (x < 0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& symmetric, const JacobiOptions& opts) {
  const std::size_t n = symmetric.rows();
  require(n == symmetric.cols(), ErrorKind::InvalidParameter,
          "jacobi_eigen needs a square matrix");
  Matrix a = symmetric;
  Matrix v = Matrix::identity(n);

  int sweep = 0;
  while (off_diagonal_norm(a) >= opts.tolerance) {
    if (sweep >= opts.max_sweeps)
      fail(ErrorKind::NumericFailure, "Jacobi eigensolver did not converge in " +
                                          std::to_string(opts.max_sweeps) +
                                          " sweeps");
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(j, j);
    for (std::size_t k = 0; k < n; ++k) out.vectors[j][k] = v(k, j);
  }
  return out;
}

Matrix transition_matrix(const RegularGraph& g) {
  Matrix p(g.n(), g.n());
  const double w = 1.0 / static_cast<double>(g.d());
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : g.neighbors(u)) p(u, v) = w;
  return p;
}

Spectrum spectrum(const RegularGraph& g, const JacobiOptions& opts) {
  const std::size_t n = g.n();
  auto eig = jacobi_eigen(transition_matrix(g), opts);
  const double scale = std::sqrt(static_cast<double>(n));
  for (auto& vec : eig.vectors) {
    for (double& x : vec) x *= scale;
    canonical_sign(vec);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return eig.values[i] > eig.values[j];
  });
  // Numerically tied eigenvalues: order their vectors lexicographically.
  constexpr double kTie = 1e-9;
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && eig.values[order[hi - 1]] - eig.values[order[hi]] < kTie) ++hi;
    std::sort(order.begin() + lo, order.begin() + hi,
              [&](std::size_t i, std::size_t j) {
                return std::lexicographical_compare(
                    eig.vectors[j].begin(), eig.vectors[j].end(),
                    eig.vectors[i].begin(), eig.vectors[i].end());
              });
    lo = hi;
  }

  Spectrum s;
  s.eigenvalues.reserve(n);
  s.eigenvectors.reserve(n);
  for (std::size_t idx : order) {
    s.eigenvalues.push_back(eig.values[idx]);
    s.eigenvectors.push_back(std::move(eig.vectors[idx]));
  }
  if (std::abs(s.eigenvalues[0] - 1.0) > 1e-10)
    fail(ErrorKind::NumericFailure, "leading eigenvalue is not 1");
  s.lambda_star = lambda_star(s);
  return s;
}

double lambda_star(const Spectrum& s) {
  double m = 0.0;
  for (std::size_t j = 1; j < s.size(); ++j) m = std::max(m, std::abs(s.eigenvalues[j]));
  return m;
}

bool is_expander(const Spectrum& s, double lambda) { return s.lambda_star <= lambda; }

std::vector<double> spectral_apply(const Spectrum& s, std::span<const double> f,
                                   int t) {
  const std::size_t n = s.size();
  require(f.size() == n, ErrorKind::InvalidParameter,
          "spectral_apply: vector length does not match the spectrum");
  require(t >= 0, ErrorKind::InvalidParameter, "spectral_apply: t must be >= 0");
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& fj = s.eigenvectors[j];
    double coeff = 0.0;
    for (std::size_t x = 0; x < n; ++x) coeff += f[x] * fj[x];
    coeff /= static_cast<double>(n);
    coeff *= std::pow(s.eigenvalues[j], t);
    for (std::size_t x = 0; x < n; ++x) out[x] += coeff * fj[x];
  }
  return out;
}

std::vector<double> uniform_set_projections(const Spectrum& s, const VertexSet& set) {
  require(!set.empty(), ErrorKind::InvalidParameter, "vertex set must be non-empty");
  std::vector<double> proj(s.size(), 0.0);
  const double w = 1.0 / static_cast<double>(set.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    double acc = 0.0;
    for (Vertex x : set) acc += s.eigenvectors[j][x];
    proj[j] = acc * w;
  }
  return proj;
}

double return_to_set_probability(const RegularGraph& g, const Spectrum& s,
                                 const VertexSet& set, int k) {
  require(k >= 0, ErrorKind::InvalidParameter, "k must be >= 0");
  const auto proj = uniform_set_projections(s, set);
  const double pi_b = static_cast<double>(set.size()) / static_cast<double>(g.n());
  double sum = 0.0;
  for (std::size_t j = 1; j < s.size(); ++j)
    sum += proj[j] * proj[j] * std::pow(s.eigenvalues[j], k);
  return pi_b + pi_b * sum;
}

double return_to_set_probability(const RegularGraph& g, const VertexSet& set,
                                 int k) {
  return return_to_set_probability(g, spectrum(g), set, k);
}

std::size_t edges_between(const RegularGraph& g, const VertexSet& f1,
                          const VertexSet& f2) {
  std::vector<bool> in2(g.n(), false);
  for (Vertex v : f2) in2[v] = true;
  std::size_t count = 0;
  for (Vertex x : f1)
    for (Vertex y : g.neighbors(x)) count += in2[y];
  return count;
}

BoundReport mixing_lemma_check(const RegularGraph& g, const Spectrum& s,
                               const VertexSet& f1, const VertexSet& f2) {
  const double n = static_cast<double>(g.n());
  const double d = static_cast<double>(g.d());
  const double a = static_cast<double>(f1.size());
  const double b = static_cast<double>(f2.size());
  const double e = static_cast<double>(edges_between(g, f1, f2));
  const double lhs = std::abs(e - d / n * a * b);
  const double rhs = s.lambda_star * d *
                     std::sqrt(std::max(0.0, (a - a * a / n) * (b - b * b / n)));
  return BoundReport::make(lhs, rhs, "expander mixing lemma");
}

BoundReport mixing_corollary_check(const RegularGraph& g, const Spectrum& s,
                                   const VertexSet& f1) {
  std::vector<bool> in1(g.n(), false);
  for (Vertex v : f1) in1[v] = true;
  VertexSet f2;
  for (Vertex v = 0; v < g.n(); ++v)
    if (!in1[v]) f2.push_back(v);
  const double lhs = 0.5 * (1.0 - s.lambda_star) * static_cast<double>(g.d()) *
                     static_cast<double>(std::min(f1.size(), f2.size()));
  const double rhs = static_cast<double>(edges_between(g, f1, f2));
  return BoundReport::make(lhs, rhs, "mixing corollary: cut lower bound");
}

}  // namespace expwalk
