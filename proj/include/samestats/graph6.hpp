#pragma once

#include <string>
#include <string_view>

#include "samestats/graph.hpp"

namespace samestats {

// Standard graph6 text form: chr(63+n) followed by the upper triangle in
// column order x(0,1), x(0,2), x(1,2), x(0,3), ... packed six bits per byte
// (most significant first), each byte offset by 63, zero padded. Only the
// single-byte size form is produced or accepted.
std::string encode_graph6(const Graph& g);
Graph decode_graph6(std::string_view line);

}  // namespace samestats
