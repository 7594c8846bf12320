#include "samestats/graph6.hpp"

#include <string>

#include "samestats/error.hpp"

namespace samestats {

namespace {
constexpr std::string_view kHeader = ">>graph6<<";
}

std::string encode_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  out.reserve(1 + static_cast<std::size_t>((pair_count(n) + 5) / 6));
  out.push_back(static_cast<char>(63 + n));
  int acc = 0;
  int filled = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      acc = (acc << 1) | (g.has_edge(u, v) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

Graph decode_graph6(std::string_view line) {
  if (line.starts_with(kHeader)) line.remove_prefix(kHeader.size());
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  if (line.empty()) throw Error(Errc::CodecError, "empty graph6 line");
  for (char c : line) {
    if (c < 63 || c > 126) {
      throw Error(Errc::CodecError, "byte " + std::to_string(static_cast<int>(static_cast<unsigned char>(c))) +
                                        " outside the graph6 range 63..126");
    }
  }
  const int n = line[0] - 63;
  if (n == 63) throw Error(Errc::OrderTooLarge, "long graph6 size forms (n >= 63) are unsupported");
  if (n > kMaxOrder) throw Error(Errc::OrderTooLarge, "graph6 order " + std::to_string(n) + " exceeds 12");
  if (n < 1) throw Error(Errc::OrderTooSmall, "graph6 order 0 is not a graph here");
  const auto expected = static_cast<std::size_t>(1 + (pair_count(n) + 5) / 6);
  if (line.size() != expected) {
    throw Error(Errc::CodecError, "graph6 line of length " + std::to_string(line.size()) + " for order " +
                                      std::to_string(n) + ", expected " + std::to_string(expected));
  }
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u, ++bit) {
      const int byte = line[1 + bit / 6] - 63;
      if ((byte >> (5 - bit % 6)) & 1) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edge_list(n, edges);
}

}  // namespace samestats
