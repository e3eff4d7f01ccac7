// Acceptance runner. `expwalk_acceptance --criterion N` runs one criterion,
// no arguments runs all of them. Exit status is 0 only if every selected
// criterion passes.

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "../../tools/commands.hpp"
#include "../oracles.hpp"
#include "expwalk/clt.hpp"
#include "expwalk/decomp.hpp"
#include "expwalk/error.hpp"
#include "expwalk/rng.hpp"
#include "expwalk/spectral.hpp"
#include "expwalk/walks.hpp"

using namespace expwalk;

namespace {

class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    std::printf("    [%s] %s\n", ok ? " ok " : "FAIL", what.c_str());
    pass_ = pass_ && ok;
  }
  void check(const BoundReport& r, const std::string& what) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " (lhs %.6g, rhs %.6g)", r.lhs, r.rhs);
    check(r.holds, what + buf);
  }
  bool pass() const { return pass_; }

 private:
  bool pass_ = true;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const std::vector<int>& rate_grid() {
  static const std::vector<int> grid{64, 128, 256, 512, 1024, 2048, 4096};
  return grid;
}

struct RateInstance {
  std::string name;
  FiniteChain chain;
  double sigma2;
  double mean_rate;
  bool graph_walk;
};

// K4 balanced, one random 3-regular n=16 expander and the sticky chain at p = 1/3.
const std::vector<RateInstance>& rate_instances() {
  static const std::vector<RateInstance> instances = [] {
    std::vector<RateInstance> out;
    const auto k4 = build_complete(4);
    const auto k4_lab = Labelling::from_string("1100");
    out.push_back({"K4 balanced", walk_chain(k4, k4_lab),
                   asymptotic_sigma2(k4, k4_lab, spectrum(k4)), 0.5, true});
    const auto g = build_random_regular(16, 3, 7);
    const auto lab = random_balanced_labelling(g, 1);
    out.push_back({"random n=16 d=3", walk_chain(g, lab), asymptotic_sigma2(g, lab, spectrum(g)),
                   0.5, true});
    out.push_back({"sticky p=1/3", sticky_chain(1.0 / 3.0), sticky_sigma2(1.0 / 3.0), 0.5, false});
    return out;
  }();
  return instances;
}

const std::vector<std::vector<IntDistribution>>& rate_laws() {
  static const auto laws = [] {
    std::vector<std::vector<IntDistribution>> out;
    for (const auto& inst : rate_instances())
      out.push_back(exact_weight_laws(inst.chain, rate_grid()));
    return out;
  }();
  return laws;
}

// Slope of a curve, or nullopt when some value is not strictly positive.
std::optional<double> slope_of(const std::vector<double>& values) {
  for (double v : values)
    if (!(v > 0.0)) return std::nullopt;
  return fit_curve(rate_grid(), values).loglog_slope;
}

std::string describe(const std::vector<double>& values) {
  std::string s;
  for (double v : values) s += fmt("%.3g ", v);
  return s;
}

// ------------------------------------------------------------- criteria

bool criterion_1() {
  Verdict v;
  const std::vector<std::pair<std::string, FiniteChain>> chains{
      {"K4", walk_chain(build_complete(4), Labelling::from_string("1100"))},
      {"K5", walk_chain(build_complete(5), Labelling::from_string("10110"))},
      {"C5", walk_chain(build_cycle(5), Labelling::from_string("11000"))},
      {"random n=6 d=3", walk_chain(build_random_regular(6, 3, 1), Labelling::from_string("100101"))}};
  for (const auto& [name, c] : chains) {
    double worst = 0.0;
    for (int t = 1; t <= 6; ++t) {
      const auto law = exact_weight_law(c, t);
      const auto ref = oracle::enumerate_weight_law(c, t);
      for (const auto& [k, p] : ref) worst = std::max(worst, std::abs(law.at(k) - p));
      for (std::int64_t k = law.lo(); k <= law.hi(); ++k)
        if (!ref.count(k)) worst = std::max(worst, law.at(k));
    }
    v.check(worst <= 1e-14, fmt("%s: max |DP - enumeration| = %.3g over t <= 6", name.c_str(), worst));
  }
  return v.pass();
}

bool criterion_2() {
  Verdict v;
  const auto g = build_complete(4);
  const auto lab = Labelling::from_string("1100");
  const auto s = spectrum(g);
  // <f - alpha, phi_j>_pi for the pi-normalized eigenvectors.
  std::vector<double> coef(s.size(), 0.0);
  for (std::size_t j = 1; j < s.size(); ++j)
    for (Vertex x = 0; x < 4; ++x) coef[j] += (lab[x] - 0.5) * s.eigenvectors[j][x] / 4.0;
  double worst_cov = 0.0;
  for (int k = 1; k <= 20; ++k) {
    double cov = 0.0;
    for (std::size_t j = 1; j < s.size(); ++j)
      cov += coef[j] * coef[j] * std::pow(s.eigenvalues[j], k);
    worst_cov = std::max(worst_cov, std::abs(cov - 1.0 / (4.0 * std::pow(-3.0, k))));
  }
  v.check(worst_cov <= 1e-12, fmt("Cov(Y_0,Y_k) = 1/(4(-3)^k), k = 1..20: max error %.3g", worst_cov));

  std::vector<int> ts;
  for (int t = 50; t <= 512; ++t) ts.push_back(t);
  const auto laws = exact_weight_laws(walk_chain(g, lab), ts);
  double worst_var = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    worst_var = std::max(worst_var, std::abs(moments(laws[i]).variance - ts[i] / 8.0 - 3.0 / 32.0));
  v.check(worst_var <= 1e-6, fmt("|Var(Z_t) - t/8 - 3/32|, t = 50..512: max %.3g", worst_var));
  return v.pass();
}

bool criterion_3() {
  Verdict v;
  CounterRng rng(derive_seed(3, "acceptance-variance"));
  int done = 0, attempts = 0;
  double worst = 0.0, worst_oracle = 0.0;
  bool bounds = true;
  std::size_t quarter = 0, three_quarter = 0;
  while (done < 20 && attempts < 1000) {
    ++attempts;
    const std::size_t n = 4 * (2 + rng.below(4));
    const std::size_t d = 3 + rng.below(2);
    const auto g = build_random_regular(n, d, rng.next());
    const auto s = spectrum(g);
    if (s.lambda_star >= 1.0 - 1e-9) continue;
    const int kind = done % 3;
    const std::size_t ones = kind == 0 ? n / 2 : kind == 1 ? n / 4 : 3 * n / 4;
    std::vector<std::uint8_t> bits(n, 0);
    for (std::size_t i = 0; i < ones; ++i) bits[i] = 1;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(bits[i], bits[rng.below(i + 1)]);
    const Labelling lab(bits);
    quarter += kind == 1;
    three_quarter += kind == 2;
    const int t = 1 + static_cast<int>(rng.below(256));
    const double dp = moments(exact_weight_law(walk_chain(g, lab), t)).variance;
    worst = std::max(worst, std::abs(variance_formula(g, lab, t, s) - dp));
    worst_oracle = std::max(worst_oracle, std::abs(oracle::variance_by_powers(g, lab, t) - dp));
    bounds = bounds && variance_bound_check(g, lab, t).holds;
    ++done;
  }
  v.check(done == 20, fmt("%d instances (%zu at alpha 1/4, %zu at alpha 3/4)", done, quarter,
                          three_quarter));
  v.check(worst <= 1e-10, fmt("variance formula vs DP: max error %.3g", worst));
  v.check(worst_oracle <= 1e-10, fmt("matrix-power oracle vs DP: max error %.3g", worst_oracle));
  v.check(bounds, "variance upper bound holds on every instance");
  return v.pass();
}

bool criterion_4() {
  Verdict v;
  const auto k4 = build_complete(4);
  const double s2 = asymptotic_sigma2(k4, Labelling::from_string("1100"), spectrum(k4));
  v.check(std::abs(s2 - 0.125) <= 1e-12, fmt("sigma^2(K4 balanced) = %.17g", s2));
  for (double p : {-0.5, 0.0, 0.5}) {
    const double rate = moments(exact_weight_law(sticky_chain(p), 4096)).variance / 4096.0;
    const double expected = (1 + p) / (4 * (1 - p));
    v.check(std::abs(rate - expected) <= 1e-3,
            fmt("sticky p=%+.1f: Var(R_4096)/4096 = %.6f vs %.6f", p, rate, expected));
  }
  std::vector<int> ts;
  for (int t = 1; t <= 512; ++t) ts.push_back(t);
  double worst = 0.0;
  for (int i = -3; i <= 3; ++i) {
    const double p = 0.3 * i;
    const auto laws = exact_weight_laws(sticky_chain(p), ts);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const double dp = moments(laws[j]).variance;
      worst = std::max(worst,
                       std::abs(sticky_variance_closed_form(p, ts[j]) - dp) / std::max(1.0, dp));
    }
  }
  v.check(worst <= 1e-12,
          fmt("sticky closed form vs DP, p = -0.9..0.9, t <= 512: max relative error %.3g", worst));
  return v.pass();
}

bool criterion_5() {
  Verdict v;
  const auto& grid = rate_grid();
  for (std::size_t i = 0; i < rate_instances().size(); ++i) {
    const auto& inst = rate_instances()[i];
    std::vector<double> err;
    for (std::size_t j = 0; j < grid.size(); ++j)
      err.push_back(lclt_error(rate_laws()[i][j], grid[j], inst.sigma2, inst.mean_rate));
    std::printf("    %s lclt_error: %s\n", inst.name.c_str(), describe(err).c_str());
    const auto slope = slope_of(err);
    v.check(slope && std::abs(*slope + 1.0) <= 0.2,
            inst.name + ": slope " + (slope ? fmt("%.4f", *slope) : "undefined") +
                " in [-1.2, -0.8]");
    if (inst.graph_walk) {
      const double first = err.front() * grid.front(), last = err.back() * grid.back();
      v.check(last <= 1.2 * first, fmt("%s: t*error %.4g at 4096 vs %.4g at 64", inst.name.c_str(),
                                       last, first));
    }
  }
  return v.pass();
}

bool criterion_6() {
  Verdict v;
  const auto& grid = rate_grid();
  for (std::size_t i = 0; i < rate_instances().size(); ++i) {
    const auto& inst = rate_instances()[i];
    std::vector<double> tv;
    for (std::size_t j = 0; j < grid.size(); ++j)
      tv.push_back(tv_to_discretized_normal(rate_laws()[i][j], grid[j], inst.sigma2,
                                            inst.mean_rate));
    std::printf("    %s TV to discretized normal: %s\n", inst.name.c_str(), describe(tv).c_str());
    const auto slope = slope_of(tv);
    v.check(slope && std::abs(*slope + 0.5) <= 0.15,
            inst.name + ": slope " + (slope ? fmt("%.4f", *slope) : "undefined") +
                " in [-0.65, -0.35]");
  }
  return v.pass();
}

bool criterion_7() {
  Verdict v;
  const auto g = build_complete(4);
  const auto lab = Labelling::from_string("1100");
  const auto s = spectrum(g);
  const double p = matching_sticky_p(asymptotic_sigma2(g, lab, s));
  v.check(std::abs(p + 1.0 / 3.0) <= 1e-15, fmt("matched p = %.17g", p));
  const auto& grid = rate_grid();
  const auto tv = tv_sticky_errors(g, lab, grid);
  std::printf("    TV(Z_t, R_t): %s\n", describe(tv).c_str());
  bool decreasing = true;
  for (std::size_t j = 1; j < tv.size(); ++j) decreasing = decreasing && tv[j] < tv[j - 1];
  v.check(decreasing, "TV strictly decreases along the grid");
  bool all_tiny = true;
  for (double x : tv) all_tiny = all_tiny && x < 1e-12;
  const auto slope = all_tiny ? std::nullopt : slope_of(tv);
  v.check(slope && *slope <= -0.4,
          "slope " + (slope ? fmt("%.4f", *slope) : std::string("undefined")) + " <= -0.4");
  const double c3 = paper_constants(s.lambda_star, g.d(), lab.alpha()).c3;
  bool within = true;
  for (std::size_t j = 0; j < grid.size(); ++j)
    within = within && tv[j] <= c3 * std::sqrt(std::log(grid[j])) / std::sqrt(grid[j]);
  v.check(within, fmt("every value <= C3 sqrt(log t)/sqrt(t), C3 = %.3g", c3));
  return v.pass();
}

bool criterion_8() {
  Verdict v;
  const int t = 4096;
  const double tv = tv_to_iid(build_complete(4), Labelling::from_string("1100"), t);
  const double limit =
      tv_distance(discretized_normal(t / 2.0, t / 4.0).law, discretized_normal(t / 2.0, t / 8.0).law);
  v.check(std::abs(tv - limit) <= 0.05,
          fmt("TV(Z_4096, Bin) = %.6f vs normal-pair limit %.6f", tv, limit));
  return v.pass();
}

VertexSet from_mask(std::uint64_t mask, std::size_t n) {
  VertexSet out;
  for (Vertex x = 0; x < n; ++x)
    if (mask >> x & 1U) out.push_back(x);
  return out;
}

Labelling random_labelling(CounterRng& rng, std::size_t n, std::size_t ones) {
  std::vector<std::uint8_t> bits(n, 0);
  for (std::size_t i = 0; i < ones; ++i) bits[i] = 1;
  for (std::size_t i = n - 1; i > 0; --i) std::swap(bits[i], bits[rng.below(i + 1)]);
  return Labelling(bits);
}

RegularGraph random_expander(CounterRng& rng, std::size_t n_min, std::size_t n_span) {
  for (;;) {
    const std::size_t n = 2 * (n_min + rng.below(n_span));
    const std::size_t d = 3 + rng.below(3);
    auto g = build_random_regular(n, d, rng.next());
    if (spectrum(g).lambda_star < 1.0 - 1e-9) return g;
  }
}

struct Count {
  std::size_t checked = 0, violations = 0;
  void add(bool ok) {
    ++checked;
    violations += !ok;
  }
};

void report(Verdict& v, const char* family, const Count& c) {
  v.check(c.violations == 0 && c.checked > 0,
          fmt("%s: %zu checked, %zu violations", family, c.checked, c.violations));
}

bool criterion_9() {
  Verdict v;
  Count mixing, corollary, kstar_bal, kstar_unbal, chernoff, binomial, normalizer;
  for (const auto& g : {build_random_regular(8, 3, 17), build_random_regular(8, 4, 3)}) {
    const auto s = spectrum(g);
    for (std::uint64_t m1 = 1; m1 < 256; ++m1) {
      const auto f1 = from_mask(m1, 8);
      if (m1 < 255) corollary.add(mixing_corollary_check(g, s, f1).holds);
      for (std::uint64_t m2 = 1; m2 < 256; ++m2)
        mixing.add(mixing_lemma_check(g, s, f1, from_mask(m2, 8)).holds);
    }
  }
  auto kstar_ok = [](const RegularGraph& g, const Labelling& lab, bool balanced) {
    try {
      const auto k = find_kstar(g, lab, balanced);
      return static_cast<double>(k.class_size) >= k.threshold - 1e-12;
    } catch (const Error&) {
      return false;
    }
  };
  const auto k4 = build_complete(4);
  for (const char* bits : {"1100", "1010", "1001", "0110", "0101", "0011"})
    kstar_bal.add(kstar_ok(k4, Labelling::from_string(bits), true));
  CounterRng rng(derive_seed(9, "acceptance-bounds"));
  for (int i = 0; i < 100; ++i) {
    const auto g = random_expander(rng, 4, 8);
    kstar_bal.add(kstar_ok(g, random_balanced_labelling(g, rng.next()), true));
  }
  for (int i = 0; i < 100; ++i) {
    const auto g = random_expander(rng, 4, 8);
    std::size_t ones = 0;
    while (ones == 0 || 2 * ones == g.n()) ones = 1 + rng.below(g.n() - 1);
    kstar_unbal.add(kstar_ok(g, random_labelling(rng, g.n(), ones), false));
  }
  for (int i = 0; i < 50; ++i) {
    const auto g = random_expander(rng, 4, 6);
    const auto s = spectrum(g);
    VertexSet a;
    while (a.empty()) a = from_mask(rng.next(), g.n());
    const int t = 8 + static_cast<int>(rng.below(120));
    chernoff.add(walk_chernoff_check(g, s, a, t, 1.0 + rng.uniform() * (t - 1)).holds);
  }
  for (int i = 0; i < 50; ++i) {
    const auto trials = static_cast<std::int64_t>(10 + rng.below(191));
    const double p = 0.05 + 0.9 * rng.uniform();
    const double mu = static_cast<double>(trials) * p;
    binomial.add(binomial_tail_check(trials, p, mu * (0.02 + 0.98 * rng.uniform())).holds);
  }
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      normalizer.add(normalizer_bound_check(-2.0 + 0.45 * i, 1.0 + 0.75 * j).holds);
  report(v, "mixing lemma (all subset pairs, two n=8 graphs)", mixing);
  report(v, "mixing corollary (all proper F1)", corollary);
  report(v, "k* existence, balanced (K4 x6 + 100 random)", kstar_bal);
  report(v, "k* existence, unbalanced (100 random)", kstar_unbal);
  report(v, "walk Chernoff (exact DP tails)", chernoff);
  report(v, "binomial lower tail (exact CDF)", binomial);
  report(v, "normalizer bound (10 x 10 grid)", normalizer);
  return v.pass();
}

bool criterion_10() {
  Verdict v;
  const auto& grid = rate_grid();
  double worst = 0.0;
  std::size_t pairs = 0;
  bool all = true;
  for (std::size_t i = 0; i < rate_instances().size(); ++i) {
    const auto& inst = rate_instances()[i];
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto r = parseval_check(rate_laws()[i][j], inst.mean_rate * grid[j],
                                    inst.sigma2 * grid[j]);
      worst = std::max(worst, r.lhs);
      all = all && r.holds;
      ++pairs;
    }
  }
  v.check(all, fmt("Parseval sum vs quadrature on %zu pairs: max gap %.3g", pairs, worst));
  for (auto [t, s2] : {std::pair{4, 0.125}, std::pair{16, 0.25}, std::pair{64, 0.75}}) {
    const double var = t * s2;
    const double bound = wrapped_tail_bound(var);
    double worst_gap = 0.0;
    bool ok = true;
    for (int k = 0; k < 100; ++k) {
      const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * k / 99.0;
      const double gap = std::abs(wrapped_normal_char(0.5 * t, var, theta) -
                                  normal_char(0.5 * t, var, theta));
      worst_gap = std::max(worst_gap, gap);
      ok = ok && gap <= bound + 1e-15;
    }
    v.check(ok, fmt("wrapped tail t=%d sigma^2=%.3f: max gap %.3g <= %.3g", t, s2, worst_gap, bound));
  }
  return v.pass();
}

bool criterion_11() {
  Verdict v;
  const auto g = build_complete(4);
  const auto lab = Labelling::from_string("1100");
  const auto kstar = find_kstar(g, lab, true);
  const int t = 200;
  const auto traces = decomposition_batch(g, lab, kstar, t, 100'000, 42);
  std::size_t bad = 0;
  for (const auto& tr : traces) {
    const bool ok = tr.z == tr.s_prime + tr.y && 0 <= tr.n_tilde && tr.n_tilde <= tr.n_t &&
                    tr.n_t <= t / 2 && std::llabs(tr.s_prime - tr.s_full) <= tr.b_t &&
                    (tr.n_tilde < tr.b_t || tr.z == tr.s_full + tr.y);
    bad += !ok;
  }
  v.check(bad == 0, fmt("pathwise invariants: %zu of %zu samples violate", bad, traces.size()));
  v.check(concentration_check(g, lab, kstar, traces), "concentration of N~_t");
  v.check(defect_estimate(g, lab, kstar, traces), "defect E|Z - S_full - Y|");
  const auto sf = sfull_distribution_check(g, lab, kstar, traces);
  v.check(sf.chi_square, fmt("S_full ~ Bin(b_t, p) chi-square, %zu dof", sf.degrees_of_freedom));
  v.check(sf.correlation, "|corr(S_full, Y)| <= 0.02");
  return v.pass();
}

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "expwalk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) std::printf("    cli stderr: %s", err.str().c_str());
  return {code, out.str()};
}

bool criterion_12() {
  Verdict v;
  const auto r = run_cli({"examples", "--which", "uniform", "--graph", "random:32:3:seed=5",
                          "--samples", "200", "--t", "512"});
  v.check(r.code == 0, fmt("examples --which uniform exit code %d", r.code));
  if (r.code == 0 || r.code == 1) {
    const auto j = nlohmann::json::parse(r.out);
    const double avg = j["average_variance"].get<double>();
    const double threshold = j["threshold"].get<double>();
    v.check(avg >= threshold, fmt("average Var(Z_512) = %.4f >= %.4f", avg, threshold));
  }
  return v.pass();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

bool criterion_13() {
  Verdict v;
  const auto root = std::filesystem::temp_directory_path() / "expwalk_acceptance_13";
  std::filesystem::remove_all(root);
  const std::vector<std::vector<std::string>> commands{
      {"spectrum", "--graph", "random:20:3:seed=3"},
      {"lclt-curve", "--graph", "random:16:3:seed=7", "--tgrid", "64:1024:x2"},
      {"tv-curve", "--graph", "complete:4", "--tgrid", "64:1024:x2"},
      {"sticky-compare", "--graph", "random:16:3:seed=7", "--tgrid", "64:1024:x2"},
      {"decomp-check", "--graph", "complete:4", "--t", "100", "--samples", "10000"},
      {"bounds", "--graph", "random:12:3:seed=1"},
      {"examples", "--which", "uniform", "--samples", "5", "--t", "64"}};
  for (const auto& base : commands) {
    std::string csv[2];
    int codes[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto dir = root / std::to_string(rep);
      auto args = base;
      args.insert(args.end(), {"--out", dir.string()});
      codes[rep] = run_cli(args).code;
      csv[rep] = slurp(dir / (base[0] + ".csv"));
    }
    v.check(codes[0] == codes[1] && !csv[0].empty() && csv[0] == csv[1],
            fmt("%s: exit %d/%d, CSV %zu bytes, identical", base[0].c_str(), codes[0], codes[1],
                csv[0].size()));
    std::filesystem::remove_all(root);
  }
  return v.pass();
}

const std::vector<std::pair<const char*, bool (*)()>> kCriteria{
    {"exact law equals path enumeration", criterion_1},
    {"K4 covariance and variance identity", criterion_2},
    {"variance formula", criterion_3},
    {"asymptotic variance", criterion_4},
    {"LCLT rate", criterion_5},
    {"TV rate", criterion_6},
    {"sticky matching", criterion_7},
    {"i.i.d. comparison", criterion_8},
    {"inequality suites", criterion_9},
    {"Parseval consistency", criterion_10},
    {"decomposition suite", criterion_11},
    {"averaged-labelling variance", criterion_12},
    {"CLI determinism", criterion_13}};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty())
    for (int n = 1; n <= static_cast<int>(kCriteria.size()); ++n) selected.push_back(n);

  bool all = true;
  for (int n : selected) {
    if (n < 1 || n > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "no criterion %d\n", n);
      return 2;
    }
    const auto& [name, fn] = kCriteria[n - 1];
    std::printf("criterion %d: %s\n", n, name);
    std::fflush(stdout);
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      std::printf("    [FAIL] exception: %s\n", e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s) %.1fs\n", ok ? "PASS" : "FAIL", n, name, secs);
    std::fflush(stdout);
    all = all && ok;
  }
  return all ? 0 : 1;
}
