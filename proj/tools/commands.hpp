#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "expwalk/graph.hpp"

namespace expwalk::cli {

/// Parses and runs one command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// complete:N | cycle:N | random:N:D:seed=S | path to a graph file.
RegularGraph resolve_graph(const std::string& spec);
/// balanced:seed=S | file:PATH | explicit bit string.
Labelling resolve_labels(const std::string& spec, const RegularGraph& g);
/// a:b:xK (geometric) or a comma-separated list; strictly increasing.
std::vector<int> parse_tgrid(const std::string& spec);

}  // namespace expwalk::cli
