#include "expwalk/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "expwalk/error.hpp"
#include "expwalk/rng.hpp"

namespace expwalk {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Validation: return "validation-error";
    case ErrorKind::OutOfHypothesis: return "out-of-hypothesis";
    case ErrorKind::NumericFailure: return "numeric-failure";
    case ErrorKind::GenerationFailure: return "generation-failure";
    case ErrorKind::ResourceExceeded: return "resource-exceeded";
    case ErrorKind::LemmaViolation: return "lemma-violation";
  }
  return "unknown";
}

bool is_connected(const std::vector<std::vector<Vertex>>& adjacency) {
  const std::size_t n = adjacency.size();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::queue<Vertex> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    Vertex u = frontier.front();
    frontier.pop();
    for (Vertex v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

RegularGraph::RegularGraph(std::size_t n, std::size_t d,
                           std::vector<std::vector<Vertex>> adjacency)
    : d_(d), adjacency_(std::move(adjacency)) {
  require(n > 0 && adjacency_.size() == n, ErrorKind::Validation,
          "adjacency size does not match n=" + std::to_string(n));
  for (std::size_t v = 0; v < n; ++v) {
    auto& nb = adjacency_[v];
    std::sort(nb.begin(), nb.end());
    require(nb.size() == d, ErrorKind::Validation,
            "vertex " + std::to_string(v) + " has degree " +
                std::to_string(nb.size()) + ", expected " + std::to_string(d));
    for (std::size_t i = 0; i < nb.size(); ++i) {
      require(nb[i] < n, ErrorKind::Validation,
              "vertex " + std::to_string(v) + " lists out-of-range neighbour");
      require(nb[i] != v, ErrorKind::Validation,
              "self-loop at vertex " + std::to_string(v));
      require(i == 0 || nb[i] != nb[i - 1], ErrorKind::Validation,
              "multi-edge at vertex " + std::to_string(v));
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (Vertex u : adjacency_[v]) {
      require(std::binary_search(adjacency_[u].begin(), adjacency_[u].end(),
                                 static_cast<Vertex>(v)),
              ErrorKind::Validation,
              "asymmetric adjacency between " + std::to_string(v) + " and " +
                  std::to_string(u));
    }
  }
  require(is_connected(adjacency_), ErrorKind::Validation,
          "graph is disconnected");
}

bool RegularGraph::has_edge(Vertex u, Vertex v) const {
  const auto& nb = adjacency_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::array<Vertex, 2>> RegularGraph::edges() const {
  std::vector<std::array<Vertex, 2>> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

Labelling::Labelling(std::vector<std::uint8_t> values)
    : values_(std::move(values)) {
  require(!values_.empty(), ErrorKind::InvalidParameter, "empty labelling");
  for (auto b : values_) {
    require(b <= 1, ErrorKind::InvalidParameter, "labels must be 0 or 1");
    ones_ += b;
  }
}

Labelling Labelling::from_string(std::string_view bits) {
  std::vector<std::uint8_t> v;
  v.reserve(bits.size());
  for (char c : bits) {
    require(c == '0' || c == '1', ErrorKind::Parse,
            std::string("invalid label character '") + c + "'");
    v.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Labelling(std::move(v));
}

VertexSet Labelling::one_set() const {
  VertexSet out;
  for (Vertex v = 0; v < size(); ++v)
    if (values_[v]) out.push_back(v);
  return out;
}

VertexSet Labelling::zero_set() const {
  VertexSet out;
  for (Vertex v = 0; v < size(); ++v)
    if (!values_[v]) out.push_back(v);
  return out;
}

std::string Labelling::to_string() const {
  std::string s;
  s.reserve(size());
  for (auto b : values_) s.push_back(static_cast<char>('0' + b));
  return s;
}

RegularGraph build_complete(std::size_t n) {
  require(n >= 3, ErrorKind::InvalidParameter, "complete graph needs n >= 3");
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) adj[u].push_back(v);
  return RegularGraph(n, n - 1, std::move(adj));
}

RegularGraph build_cycle(std::size_t n) {
  require(n >= 3, ErrorKind::InvalidParameter, "cycle needs n >= 3");
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex u = 0; u < n; ++u) {
    adj[u].push_back(static_cast<Vertex>((u + 1) % n));
    adj[u].push_back(static_cast<Vertex>((u + n - 1) % n));
  }
  return RegularGraph(n, 2, std::move(adj));
}

RegularGraph build_random_regular(std::size_t n, std::size_t d,
                                  std::uint64_t seed) {
  require(d >= 1 && d < n, ErrorKind::InvalidParameter,
          "random regular graph needs 1 <= d < n");
  require((n * d) % 2 == 0, ErrorKind::InvalidParameter,
          "n*d must be even for a d-regular graph");
  const std::size_t points = n * d;
  std::vector<Vertex> owner(points);
  for (std::size_t p = 0; p < points; ++p) owner[p] = static_cast<Vertex>(p / d);

  for (int attempt = 0; attempt < kRandomRegularMaxAttempts; ++attempt) {
    CounterRng rng(derive_seed(seed, "pairing", attempt));
    std::vector<Vertex> perm = owner;
    for (std::size_t i = points - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);

    std::vector<std::vector<Vertex>> adj(n);
    bool simple = true;
    for (std::size_t p = 0; p < points && simple; p += 2) {
      Vertex u = perm[p], v = perm[p + 1];
      if (u == v ||
          std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end()) {
        simple = false;
        break;
      }
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    if (!simple || !is_connected(adj)) continue;
    return RegularGraph(n, d, std::move(adj));
  }
  fail(ErrorKind::GenerationFailure,
       "random regular graph: rejection budget exhausted");
}

LabelClasses label_classes(const RegularGraph& g, const Labelling& lab) {
  require(lab.size() == g.n(), ErrorKind::InvalidParameter,
          "labelling length " + std::to_string(lab.size()) +
              " does not match graph size " + std::to_string(g.n()));
  LabelClasses lc;
  lc.q.resize(g.n());
  lc.a_classes.resize(g.d() + 1);
  lc.b_classes.resize(g.d() + 1);
  for (Vertex x = 0; x < g.n(); ++x) {
    std::size_t q = 0;
    for (Vertex y : g.neighbors(x)) q += lab[y] == 0;
    lc.q[x] = q;
    (lab[x] ? lc.b_classes : lc.a_classes)[q].push_back(x);
  }
  return lc;
}

Labelling random_balanced_labelling(const RegularGraph& g, std::uint64_t seed) {
  const std::size_t n = g.n();
  require(n % 2 == 0, ErrorKind::InvalidParameter,
          "balanced labelling needs an even vertex count");
  std::vector<Vertex> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  CounterRng rng(derive_seed(seed, "balanced-labelling"));
  // Partial Fisher-Yates: the first n/2 slots are a uniform n/2-subset.
  for (std::size_t i = 0; i < n / 2; ++i)
    std::swap(idx[i], idx[i + rng.below(n - i)]);
  std::vector<std::uint8_t> values(n, 0);
  for (std::size_t i = 0; i < n / 2; ++i) values[idx[i]] = 1;
  return Labelling(std::move(values));
}

bool is_bipartite(const RegularGraph& g) {
  std::vector<int> side(g.n(), -1);
  std::queue<Vertex> frontier;
  side[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    Vertex u = frontier.front();
    frontier.pop();
    for (Vertex v : g.neighbors(u)) {
      if (side[v] < 0) {
        side[v] = 1 - side[u];
        frontier.push(v);
      } else if (side[v] == side[u]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace expwalk
