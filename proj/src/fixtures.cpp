#include "wlspec/fixtures.hpp"

#include "wlspec/errors.hpp"

namespace wlspec {

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = [] {
    auto [g, h] = build_counterexample_pair();
    std::vector<Fixture> f;
    f.push_back({"K1", "single vertex", complete_graph(1)});
    f.push_back({"K2", "single edge", complete_graph(2)});
    f.push_back({"2K1", "two isolated vertices", edgeless_graph(2)});
    f.push_back({"K3", "triangle", complete_graph(3)});
    f.push_back({"P3", "path on three vertices", path_graph(3)});
    f.push_back({"C4", "four-cycle", cycle_graph(4)});
    f.push_back({"C6", "six-cycle", cycle_graph(6)});
    f.push_back({"2C3", "two disjoint triangles", disjoint_union(complete_graph(3), complete_graph(3)).graph});
    f.push_back({"C4+K1", "four-cycle plus isolated vertex", disjoint_union(cycle_graph(4), complete_graph(1)).graph});
    f.push_back({"K1_4", "star with four leaves", star_graph(4)});
    f.push_back({"C6+K1", "six-cycle plus isolated vertex", disjoint_union(cycle_graph(6), complete_graph(1)).graph});
    f.push_back({"gadget-G", "28-vertex gadget graph, attachment order X,X,Y,Y", g});
    f.push_back({"gadget-H", "28-vertex gadget graph, attachment order X,Y,X,Y", h});
    return f;
  }();
  return all;
}

const Graph& fixture(const std::string& name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f.graph;
  throw ArgumentError("unknown fixture '" + name + "'");
}

std::string fixture_directory() { return WLSPEC_FIXTURE_DIR; }

}  // namespace wlspec
