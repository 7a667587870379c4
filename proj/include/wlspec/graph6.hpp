#pragma once

#include <string>
#include <string_view>

#include "wlspec/graph.hpp"

namespace wlspec {

/// Decodes one graph6 line. Accepts an optional ">>graph6<<" header and a
/// single trailing newline. Errors throw ParseError with the byte offset.
Graph parse_graph6(std::string_view text);

/// Encodes without header or newline.
std::string serialize_graph6(const Graph& g);

}  // namespace wlspec
