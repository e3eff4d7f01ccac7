#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "expwalk/clt.hpp"
#include "expwalk/decomp.hpp"
#include "expwalk/dist.hpp"
#include "expwalk/error.hpp"
#include "expwalk/rng.hpp"
#include "expwalk/spectral.hpp"
#include "expwalk/walks.hpp"

namespace expwalk::cli {
namespace {

using nlohmann::json;

struct Config {
  std::string command;
  std::string graph;
  std::string labels = "balanced:seed=1";
  std::string tgrid = "64:4096:x2";
  std::string which = "k4";
  std::string out;
  int t = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 42;
};

struct Report {
  json body;
  std::string csv;
  bool violation = false;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const Config& c) {
  return {{"command", c.command}, {"graph", c.graph},     {"labels", c.labels},
          {"tgrid", c.tgrid},     {"which", c.which},     {"out", c.out},
          {"t", c.t},             {"samples", c.samples}, {"seed", c.seed}};
}

json to_json(const BoundReport& r) {
  return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}, {"context", r.context}};
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == s.size() && !s.empty(), ErrorKind::Parse,
          "invalid " + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::uint64_t parse_seed_field(const std::string& field) {
  require(field.rfind("seed=", 0) == 0, ErrorKind::Parse,
          "expected seed=S, got '" + field + "'");
  return parse_u64(field.substr(5), "seed");
}

// ---------------------------------------------------------------- commands

Report cmd_spectrum(const Config& c) {
  const auto g = resolve_graph(c.graph);
  const auto s = spectrum(g);
  Report r;
  r.body = {{"n", g.n()},
            {"d", g.d()},
            {"eigenvalues", s.eigenvalues},
            {"lambda_star", s.lambda_star},
            {"expander", s.lambda_star < 1.0 - 1e-12},
            {"bipartite", is_bipartite(g)}};
  r.csv = "index,eigenvalue\n";
  for (std::size_t j = 0; j < s.size(); ++j)
    r.csv += std::to_string(j) + "," + num(s.eigenvalues[j]) + "\n";
  return r;
}

struct CurveSetup {
  RegularGraph g;
  Labelling lab;
  Spectrum s;
  double sigma2;
  PaperConstants constants;
  std::vector<int> grid;
};

CurveSetup curve_setup(const Config& c) {
  auto g = resolve_graph(c.graph);
  auto lab = resolve_labels(c.labels, g);
  auto s = spectrum(g);
  require(s.lambda_star < 1.0 - 1e-12, ErrorKind::OutOfHypothesis,
          "hypothesis lambda < 1 fails: graph is not an expander");
  const double sigma2 = asymptotic_sigma2(g, lab, s);
  auto constants = paper_constants(s.lambda_star, g.d(), lab.alpha());
  auto grid = parse_tgrid(c.tgrid);
  validate_t_grid(grid);
  return {std::move(g), std::move(lab), std::move(s), sigma2, constants, std::move(grid)};
}

Report curve_report(const CurveSetup& cs, const std::vector<double>& values,
                    const std::function<double(int)>& bound) {
  Report r;
  r.csv = "t,value\n";
  bool within = true;
  json points = json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double b = bound(cs.grid[i]);
    within = within && values[i] <= b;
    r.csv += std::to_string(cs.grid[i]) + "," + num(values[i]) + "\n";
    points.push_back({{"t", cs.grid[i]}, {"value", values[i]}, {"bound", b}});
  }
  bool degenerate = false;
  for (double v : values) degenerate = degenerate || !(v > 0.0);
  if (degenerate) {
    r.body["slope"] = nullptr;
    r.body["stderr"] = nullptr;
    r.body["degenerate"] = true;
  } else {
    const auto fit = fit_curve(cs.grid, values);
    r.body["slope"] = fit.loglog_slope;
    r.body["stderr"] = fit.slope_stderr;
    r.body["degenerate"] = false;
  }
  r.body["paper_bound_satisfied"] = within;
  r.body["points"] = points;
  r.body["sigma2"] = cs.sigma2;
  r.body["lambda_star"] = cs.s.lambda_star;
  r.body["alpha"] = cs.lab.alpha();
  r.violation = !within;
  return r;
}

Report cmd_lclt_curve(const Config& c) {
  const auto cs = curve_setup(c);
  const double alpha = cs.lab.alpha();
  const double k = cs.constants.lclt_constant();
  auto r = curve_report(cs, lclt_errors(walk_chain(cs.g, cs.lab), cs.grid, cs.sigma2, alpha),
                        [k](int t) { return k / t; });
  r.body["constant"] = k;
  return r;
}

Report cmd_tv_curve(const Config& c) {
  const auto cs = curve_setup(c);
  const double alpha = cs.lab.alpha();
  const double k = cs.constants.tv_constant();
  auto r = curve_report(
      cs, tv_normal_errors(walk_chain(cs.g, cs.lab), cs.grid, cs.sigma2, alpha),
      [k](int t) { return k * std::pow(std::log(t), 0.25) / std::sqrt(t); });
  r.body["constant"] = k;
  return r;
}

Report cmd_sticky_compare(const Config& c) {
  const auto cs = curve_setup(c);
  const double k = cs.constants.c3;
  auto r = curve_report(cs, tv_sticky_errors(cs.g, cs.lab, cs.grid), [k](int t) {
    return k * std::sqrt(std::log(t)) / std::sqrt(t);
  });
  r.body["constant"] = k;
  r.body["p"] = matching_sticky_p(cs.sigma2);
  return r;
}

Report cmd_decomp_check(const Config& c) {
  const auto g = resolve_graph(c.graph);
  const auto lab = resolve_labels(c.labels, g);
  const int t = c.t > 0 ? c.t : 200;
  const std::size_t samples = c.samples > 0 ? c.samples : 100'000;
  const auto kstar = find_kstar(g, lab, lab.balanced());
  const auto setup = decomposition_setup(g, lab, kstar, t);
  const auto traces = decomposition_batch(g, lab, kstar, t, samples, c.seed);

  bool pathwise = true;
  for (const auto& tr : traces) {
    pathwise = pathwise && tr.z == tr.s_prime + tr.y && 0 <= tr.n_tilde &&
               tr.n_tilde <= tr.n_t && tr.n_t <= t / 2 &&
               std::llabs(tr.s_prime - tr.s_full) <= tr.b_t &&
               (tr.n_tilde < tr.b_t || tr.z == tr.s_full + tr.y);
  }
  const auto conc = concentration_check(g, lab, kstar, traces);
  const auto defect = defect_estimate(g, lab, kstar, traces);
  const auto sfull = sfull_distribution_check(g, lab, kstar, traces);

  Report r;
  r.body = {{"kstar",
             {{"k_star", kstar.k_star},
              {"side", to_string(kstar.side)},
              {"class_size", kstar.class_size},
              {"threshold", kstar.threshold},
              {"delta", kstar.delta}}},
            {"setup",
             {{"t", t},
              {"expected_n", setup.expected_n},
              {"expected_n_tilde", setup.expected_n_tilde},
              {"b_t", setup.b_t},
              {"success_p", setup.success_p}}},
            {"pathwise_invariants", pathwise},
            {"concentration", to_json(conc)},
            {"defect", to_json(defect)},
            {"sfull_chi_square", to_json(sfull.chi_square)},
            {"sfull_correlation", to_json(sfull.correlation)},
            {"sfull_degrees_of_freedom", sfull.degrees_of_freedom}};
  r.csv = to_csv(traces);
  r.violation = !(pathwise && conc.holds && defect.holds && sfull.holds());
  return r;
}

struct Tally {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_excess = -INFINITY;

  void add(const BoundReport& b) {
    ++checked;
    violations += !b.holds;
    worst_excess = std::max(worst_excess, b.lhs - b.rhs);
  }
  json to_json() const {
    return {{"checked", checked}, {"violations", violations}, {"worst_excess", worst_excess}};
  }
};

VertexSet random_subset(const RegularGraph& g, CounterRng& rng) {
  VertexSet out;
  while (out.empty())
    for (Vertex v = 0; v < g.n(); ++v)
      if (rng.bernoulli(0.5)) out.push_back(v);
  return out;
}

VertexSet subset_from_mask(std::uint64_t mask, std::size_t n) {
  VertexSet out;
  for (Vertex v = 0; v < n; ++v)
    if (mask >> v & 1U) out.push_back(v);
  return out;
}

Report cmd_bounds(const Config& c) {
  const auto g = resolve_graph(c.graph);
  const auto s = spectrum(g);
  const int t = c.t > 0 ? c.t : 64;
  Tally mixing, corollary, chernoff, binomial, normalizer;

  constexpr std::size_t kExhaustiveLimit = 10;
  if (g.n() <= kExhaustiveLimit) {
    const std::uint64_t full = (std::uint64_t{1} << g.n()) - 1;
    for (std::uint64_t m1 = 1; m1 <= full; ++m1) {
      const auto f1 = subset_from_mask(m1, g.n());
      if (m1 < full) corollary.add(mixing_corollary_check(g, s, f1));
      for (std::uint64_t m2 = 1; m2 <= full; ++m2)
        mixing.add(mixing_lemma_check(g, s, f1, subset_from_mask(m2, g.n())));
    }
  } else {
    CounterRng rng(derive_seed(c.seed, "bounds-mixing"));
    for (int i = 0; i < 2000; ++i) {
      const auto f1 = random_subset(g, rng);
      if (f1.size() < g.n()) corollary.add(mixing_corollary_check(g, s, f1));
      mixing.add(mixing_lemma_check(g, s, f1, random_subset(g, rng)));
    }
  }

  if (s.lambda_star < 1.0 - 1e-12) {
    CounterRng rng(derive_seed(c.seed, "bounds-chernoff"));
    for (int i = 0; i < 50; ++i) {
      const auto a = random_subset(g, rng);
      const double gamma = 1.0 + rng.uniform() * (t - 1);
      chernoff.add(walk_chernoff_check(g, s, a, t, gamma));
    }
  }
  {
    CounterRng rng(derive_seed(c.seed, "bounds-binomial"));
    for (int i = 0; i < 50; ++i) {
      const auto trials = static_cast<std::int64_t>(10 + rng.below(191));
      const double p = 0.05 + 0.9 * rng.uniform();
      const double mu = static_cast<double>(trials) * p;
      binomial.add(binomial_tail_check(trials, p, mu * (0.02 + 0.98 * rng.uniform())));
    }
  }
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      normalizer.add(normalizer_bound_check(0.1 * i, 1.0 + 0.5 * j));

  Report r;
  r.body = {{"lambda_star", s.lambda_star},
            {"mixing_lemma", mixing.to_json()},
            {"mixing_corollary", corollary.to_json()},
            {"walk_chernoff", chernoff.to_json()},
            {"binomial_tail", binomial.to_json()},
            {"normalizer", normalizer.to_json()}};
  r.csv = "family,checked,violations\n";
  for (const auto& [name, tally] :
       {std::pair<const char*, const Tally*>{"mixing_lemma", &mixing},
        {"mixing_corollary", &corollary},
        {"walk_chernoff", &chernoff},
        {"binomial_tail", &binomial},
        {"normalizer", &normalizer}}) {
    r.csv += std::string(name) + "," + std::to_string(tally->checked) + "," +
             std::to_string(tally->violations) + "\n";
    r.violation = r.violation || tally->violations > 0;
  }
  return r;
}

Report cmd_examples_k4(const Config& c) {
  const auto g = build_complete(4);
  const auto lab = Labelling::from_string("1100");
  const auto s = spectrum(g);
  const int t = c.t > 0 ? c.t : 512;
  const auto proj = uniform_set_projections(s, lab.one_set());
  const double alpha = lab.alpha();

  Report r;
  r.csv = "k,covariance,expected\n";
  double worst_cov = 0.0;
  for (int k = 1; k <= 20; ++k) {
    double cov = 0.0;
    for (std::size_t j = 1; j < s.size(); ++j)
      cov += alpha * alpha * proj[j] * proj[j] * std::pow(s.eigenvalues[j], k);
    const double expected = 1.0 / (4.0 * std::pow(-3.0, k));
    worst_cov = std::max(worst_cov, std::abs(cov - expected));
    r.csv += std::to_string(k) + "," + num(cov) + "," + num(expected) + "\n";
  }
  const double var = moments(exact_weight_law(walk_chain(g, lab), t)).variance;
  const double dev = std::abs(var - t / 8.0 - 3.0 / 32.0);
  const bool cov_ok = worst_cov <= 1e-12;
  const bool var_ok = dev <= 1e-6;
  r.body = {{"t", t},
            {"covariance_max_error", worst_cov},
            {"covariance_pass", cov_ok},
            {"variance", var},
            {"variance_deviation", dev},
            {"variance_pass", var_ok},
            {"sigma2", asymptotic_sigma2(g, lab, s)}};
  r.violation = !(cov_ok && var_ok);
  return r;
}

Report cmd_examples_uniform(const Config& c) {
  const auto g = resolve_graph(c.graph.empty() ? "random:32:3:seed=5" : c.graph);
  const int t = c.t > 0 ? c.t : 512;
  const std::size_t samples = c.samples > 0 ? c.samples : 200;
  Report r;
  r.csv = "index,variance\n";
  KahanSum total;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto lab = random_balanced_labelling(g, derive_seed(c.seed, "labelling", i));
    const double var = moments(exact_weight_law(walk_chain(g, lab), t)).variance;
    total += var;
    r.csv += std::to_string(i) + "," + num(var) + "\n";
  }
  const double avg = total.value() / static_cast<double>(samples);
  const double d = static_cast<double>(g.d());
  const double n = static_cast<double>(g.n());
  const double threshold = t / 4.0 + 0.5 * (1.0 / d - 3.0 / (n - 1.0)) * t - 5.0;
  r.body = {{"t", t},
            {"labellings", samples},
            {"average_variance", avg},
            {"threshold", threshold},
            {"pass", avg >= threshold}};
  r.violation = avg < threshold;
  return r;
}

Report cmd_examples(const Config& c) {
  if (c.which == "k4") return cmd_examples_k4(c);
  if (c.which == "uniform") return cmd_examples_uniform(c);
  fail(ErrorKind::InvalidParameter, "--which must be k4 or uniform");
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LemmaViolation: return 1;
    case ErrorKind::InvalidParameter:
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::OutOfHypothesis: return 2;
    case ErrorKind::NumericFailure:
    case ErrorKind::GenerationFailure: return 3;
    case ErrorKind::ResourceExceeded: return 4;
  }
  return 3;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorKind::InvalidParameter,
          "cannot write " + path.string());
  f << text;
}

}  // namespace

RegularGraph resolve_graph(const std::string& spec) {
  require(!spec.empty(), ErrorKind::InvalidParameter, "--graph is required");
  const auto parts = split(spec, ':');
  if (parts[0] == "complete" && parts.size() == 2)
    return build_complete(parse_u64(parts[1], "vertex count"));
  if (parts[0] == "cycle" && parts.size() == 2)
    return build_cycle(parse_u64(parts[1], "vertex count"));
  if (parts[0] == "random" && parts.size() == 4)
    return build_random_regular(parse_u64(parts[1], "vertex count"),
                                parse_u64(parts[2], "degree"), parse_seed_field(parts[3]));
  if (parts[0] == "complete" || parts[0] == "cycle" || parts[0] == "random")
    fail(ErrorKind::Parse, "malformed graph source '" + spec + "'");
  return load_graph(spec);
}

Labelling resolve_labels(const std::string& spec, const RegularGraph& g) {
  Labelling lab = [&] {
    if (spec.rfind("balanced:", 0) == 0)
      return random_balanced_labelling(g, parse_seed_field(spec.substr(9)));
    if (spec.rfind("file:", 0) == 0) return load_labelling(spec.substr(5));
    return Labelling::from_string(spec);
  }();
  require(lab.size() == g.n(), ErrorKind::Validation,
          "labelling has " + std::to_string(lab.size()) + " entries, graph has " +
              std::to_string(g.n()) + " vertices");
  return lab;
}

std::vector<int> parse_tgrid(const std::string& spec) {
  std::vector<int> grid;
  const auto parts = split(spec, ':');
  if (parts.size() == 3) {
    require(parts[2].size() > 1 && parts[2][0] == 'x', ErrorKind::Parse,
            "grid step must look like x2");
    const auto a = parse_u64(parts[0], "grid start");
    const auto b = parse_u64(parts[1], "grid end");
    const auto f = parse_u64(parts[2].substr(1), "grid factor");
    require(a >= 1 && f >= 2 && b <= 1'000'000, ErrorKind::InvalidParameter,
            "grid needs start >= 1, factor >= 2, end <= 1e6");
    for (auto v = a; v <= b; v *= f) grid.push_back(static_cast<int>(v));
  } else {
    require(parts.size() == 1, ErrorKind::Parse, "malformed t grid '" + spec + "'");
    for (const auto& p : split(spec, ','))
      grid.push_back(static_cast<int>(parse_u64(p, "grid point")));
  }
  require(!grid.empty(), ErrorKind::InvalidParameter, "empty t grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    require(grid[i] > grid[i - 1], ErrorKind::InvalidParameter,
            "t grid must be strictly increasing");
  return grid;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Random-walk weight statistics on expander graphs"};
  app.require_subcommand(1);

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph,
                    "complete:N | cycle:N | random:N:D:seed=S | graph file");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    sub->add_option("--out", cfg.out, "Directory for report files");
  };
  auto add_labels = [&](CLI::App* sub) {
    sub->add_option("--labels", cfg.labels, "balanced:seed=S | file:PATH | bit string")
        ->capture_default_str();
  };

  std::vector<std::pair<CLI::App*, std::function<Report(const Config&)>>> commands;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Walk-operator spectrum");
  add_graph(spectrum_cmd);
  add_common(spectrum_cmd);
  commands.emplace_back(spectrum_cmd, cmd_spectrum);

  for (auto [name, help, fn] :
       {std::tuple<const char*, const char*, Report (*)(const Config&)>{
            "lclt-curve", "Pointwise normal approximation error over a t grid",
            cmd_lclt_curve},
        {"tv-curve", "TV distance to the discretized normal over a t grid", cmd_tv_curve},
        {"sticky-compare", "TV distance to the matched sticky chain", cmd_sticky_compare}}) {
    auto* sub = app.add_subcommand(name, help);
    add_graph(sub);
    add_labels(sub);
    add_common(sub);
    sub->add_option("--tgrid", cfg.tgrid, "a:b:xK or comma list")->capture_default_str();
    commands.emplace_back(sub, fn);
  }

  auto* decomp_cmd = app.add_subcommand("decomp-check", "2-cycle decomposition checks");
  add_graph(decomp_cmd);
  add_labels(decomp_cmd);
  add_common(decomp_cmd);
  decomp_cmd->add_option("--t", cfg.t, "Walk length (default 200)");
  decomp_cmd->add_option("--samples", cfg.samples, "Walks (default 100000)");
  commands.emplace_back(decomp_cmd, cmd_decomp_check);

  auto* bounds_cmd = app.add_subcommand("bounds", "Inequality sweeps");
  add_graph(bounds_cmd);
  add_common(bounds_cmd);
  bounds_cmd->add_option("--t", cfg.t, "Walk length for tail checks (default 64)");
  commands.emplace_back(bounds_cmd, cmd_bounds);

  auto* examples_cmd = app.add_subcommand("examples", "Worked examples");
  add_graph(examples_cmd);
  add_common(examples_cmd);
  examples_cmd->add_option("--which", cfg.which, "k4 | uniform")->capture_default_str();
  examples_cmd->add_option("--t", cfg.t, "Walk length (default 512)");
  examples_cmd->add_option("--samples", cfg.samples, "Labellings for uniform (default 200)");
  commands.emplace_back(examples_cmd, cmd_examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      cfg.command = sub->get_name();
      Report r = fn(cfg);
      r.body["config"] = to_json(cfg);
      r.body["theorem_violation"] = r.violation;
      const std::string text = r.body.dump(2) + "\n";
      if (!cfg.out.empty()) {
        std::filesystem::create_directories(cfg.out);
        write_text(std::filesystem::path(cfg.out) / (cfg.command + ".json"), text);
        write_text(std::filesystem::path(cfg.out) / (cfg.command + ".csv"), r.csv);
      }
      out << text;
      if (r.violation) {
        err << "error: theorem check failed (holds=false)\n";
        return 1;
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error [io]: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace expwalk::cli
