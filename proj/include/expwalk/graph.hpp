#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace expwalk {

using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>;

/// A finite, connected, simple d-regular graph on vertices 0..n-1.
///
/// The constructor validates every invariant (degree, simplicity, symmetry,
/// connectivity) and throws Error{Validation} otherwise, so any live
/// RegularGraph is well formed.
class RegularGraph {
 public:
  RegularGraph(std::size_t n, std::size_t d,
               std::vector<std::vector<Vertex>> adjacency);

  std::size_t n() const { return adjacency_.size(); }
  std::size_t d() const { return d_; }

  /// Sorted neighbour list of v.
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  bool has_edge(Vertex u, Vertex v) const;
  std::size_t edge_count() const { return n() * d_ / 2; }

  /// Each undirected edge once as (u, v) with u < v, in lexicographic order.
  std::vector<std::array<Vertex, 2>> edges() const;

  friend bool operator==(const RegularGraph&, const RegularGraph&) = default;

 private:
  std::size_t d_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// 0/1 vertex valuation. B = one_set (label 1), A = zero_set (label 0).
class Labelling {
 public:
  explicit Labelling(std::vector<std::uint8_t> values);
  /// Parses a string of '0'/'1' characters.
  static Labelling from_string(std::string_view bits);

  std::size_t size() const { return values_.size(); }
  std::uint8_t operator[](Vertex v) const { return values_[v]; }
  std::span<const std::uint8_t> values() const { return values_; }

  std::size_t ones() const { return ones_; }
  /// Density |B| / n.
  double alpha() const {
    return static_cast<double>(ones_) / static_cast<double>(size());
  }
  bool balanced() const { return 2 * ones_ == size(); }

  VertexSet one_set() const;
  VertexSet zero_set() const;
  std::string to_string() const;

  friend bool operator==(const Labelling&, const Labelling&) = default;

 private:
  std::vector<std::uint8_t> values_;
  std::size_t ones_ = 0;
};

/// Neighbour-count classes: q(x) = #{y ~ x : val(y) = 0};
/// A_j = {x in A : q(x) = j}, B_j = {x in B : q(x) = j} for j = 0..d.
struct LabelClasses {
  std::vector<std::size_t> q;
  std::vector<VertexSet> a_classes;
  std::vector<VertexSet> b_classes;

  std::size_t a_size(std::size_t j) const { return a_classes[j].size(); }
  std::size_t b_size(std::size_t j) const { return b_classes[j].size(); }
};

RegularGraph build_complete(std::size_t n);
RegularGraph build_cycle(std::size_t n);

/// Pairing-model random d-regular graph. Whole matchings are rejected if
/// they contain loops or multi-edges or the result is disconnected.
RegularGraph build_random_regular(std::size_t n, std::size_t d,
                                  std::uint64_t seed);

inline constexpr int kRandomRegularMaxAttempts = 10'000;

LabelClasses label_classes(const RegularGraph& g, const Labelling& lab);

/// Uniform over labellings with exactly n/2 ones.
Labelling random_balanced_labelling(const RegularGraph& g, std::uint64_t seed);

bool is_connected(const std::vector<std::vector<Vertex>>& adjacency);
bool is_bipartite(const RegularGraph& g);

// Text formats. Graph: "n d" header then one "u v" line per edge, '#'
// comments. Labelling: "n" then a line of n characters from {0,1}.
std::string format_graph(const RegularGraph& g);
RegularGraph parse_graph(std::string_view text);
std::string format_labelling(const Labelling& lab);
Labelling parse_labelling(std::string_view text);

void save_graph(const RegularGraph& g, const std::filesystem::path& path);
RegularGraph load_graph(const std::filesystem::path& path);
void save_labelling(const Labelling& lab, const std::filesystem::path& path);
Labelling load_labelling(const std::filesystem::path& path);

}  // namespace expwalk
