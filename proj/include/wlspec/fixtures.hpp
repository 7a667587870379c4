#pragma once

#include <string>
#include <vector>

#include "wlspec/graph.hpp"

namespace wlspec {

struct Fixture {
  std::string name;
  std::string description;
  Graph graph;
};

/// Named graphs shipped with the tool, in a fixed order. The same graphs are
/// stored as graph6 files under data/fixtures/.
const std::vector<Fixture>& fixtures();

/// Throws ArgumentError for unknown names.
const Graph& fixture(const std::string& name);

/// Directory holding the shipped fixture files at build time.
std::string fixture_directory();

}  // namespace wlspec
