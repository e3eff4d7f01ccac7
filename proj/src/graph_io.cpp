#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "expwalk/error.hpp"
#include "expwalk/graph.hpp"

namespace expwalk {
namespace {

struct Line {
  std::size_t number;
  std::string text;
};

// Non-empty lines with '#' comments and surrounding whitespace removed.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      const auto last = line.find_last_not_of(" \t\r");
      out.push_back({number, std::string(line.substr(first, last - first + 1))});
    }
    pos = end + 1;
  }
  return out;
}

std::vector<std::uint64_t> parse_ints(const Line& line, std::size_t expected) {
  std::vector<std::uint64_t> out;
  const char* p = line.text.data();
  const char* end = p + line.text.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    if (p == end) break;
    std::uint64_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next != end && *next != ' ' && *next != '\t'))
      fail(ErrorKind::Parse, "line " + std::to_string(line.number) +
                                 ": expected non-negative integers");
    out.push_back(v);
    p = next;
  }
  if (out.size() != expected)
    fail(ErrorKind::Parse, "line " + std::to_string(line.number) + ": expected " +
                               std::to_string(expected) + " integers, got " +
                               std::to_string(out.size()));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidParameter, "cannot write " + path.string());
  out << text;
}

}  // namespace

std::string format_graph(const RegularGraph& g) {
  std::ostringstream ss;
  ss << g.n() << ' ' << g.d() << '\n';
  for (auto [u, v] : g.edges()) ss << u << ' ' << v << '\n';
  return ss.str();
}

RegularGraph parse_graph(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) fail(ErrorKind::Parse, "graph file: missing header");
  auto header = parse_ints(lines[0], 2);
  const std::size_t n = header[0], d = header[1];
  if (n == 0 || d == 0)
    fail(ErrorKind::Parse, "line " + std::to_string(lines[0].number) +
                               ": n and d must be positive");

  std::vector<std::vector<Vertex>> adj(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    auto uv = parse_ints(line, 2);
    const std::string where = "line " + std::to_string(line.number) + ": ";
    if (uv[0] >= n || uv[1] >= n)
      fail(ErrorKind::Validation, where + "vertex index out of range");
    if (uv[0] == uv[1]) fail(ErrorKind::Validation, where + "self-loop");
    auto u = static_cast<Vertex>(uv[0]), v = static_cast<Vertex>(uv[1]);
    if (std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end())
      fail(ErrorKind::Validation, where + "duplicate edge");
    adj[u].push_back(v);
    adj[v].push_back(u);
    if (adj[u].size() > d || adj[v].size() > d)
      fail(ErrorKind::Validation,
           where + "vertex exceeds declared degree " + std::to_string(d));
  }
  for (std::size_t v = 0; v < n; ++v)
    if (adj[v].size() != d)
      fail(ErrorKind::Validation, "vertex " + std::to_string(v) + " has degree " +
                                      std::to_string(adj[v].size()) +
                                      ", declared " + std::to_string(d));
  return RegularGraph(n, d, std::move(adj));
}

std::string format_labelling(const Labelling& lab) {
  return std::to_string(lab.size()) + "\n" + lab.to_string() + "\n";
}

Labelling parse_labelling(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.size() != 2)
    fail(ErrorKind::Parse, "labelling file: expected a size line and a bit line");
  const std::size_t n = parse_ints(lines[0], 1)[0];
  if (lines[1].text.size() != n)
    fail(ErrorKind::Validation,
         "line " + std::to_string(lines[1].number) + ": expected " +
             std::to_string(n) + " labels, got " +
             std::to_string(lines[1].text.size()));
  return Labelling::from_string(lines[1].text);
}

void save_graph(const RegularGraph& g, const std::filesystem::path& path) {
  write_file(path, format_graph(g));
}

RegularGraph load_graph(const std::filesystem::path& path) {
  return parse_graph(read_file(path));
}

void save_labelling(const Labelling& lab, const std::filesystem::path& path) {
  write_file(path, format_labelling(lab));
}

Labelling load_labelling(const std::filesystem::path& path) {
  return parse_labelling(read_file(path));
}

}  // namespace expwalk
