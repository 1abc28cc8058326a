#pragma once

#include "structura/graph.hpp"

#include <string>
#include <string_view>

namespace structura {

/// Standard graph6 encoding (no ">>graph6<<" header, no trailing newline).
std::string toGraph6(const Graph& g);

/// Decodes one graph6 line. An optional ">>graph6<<" header and trailing
/// whitespace are accepted. Throws ParseError on malformed input.
Graph fromGraph6(std::string_view text);

} // namespace structura
