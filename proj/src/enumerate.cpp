#include "samestats/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "samestats/canonical.hpp"
#include "samestats/error.hpp"
#include "samestats/graph6.hpp"
#include "samestats/parallel.hpp"

namespace samestats {

namespace {

constexpr std::array<std::uint64_t, 11> kKnownCounts = {0, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168};

void check_enumeration_order(int n, const EnumerationOptions& options) {
  if (n < 1 || n > kMaxEnumerationOrder) {
    throw Error(Errc::OrderOutOfRange, "enumeration order must be in 1.." +
                                           std::to_string(kMaxEnumerationOrder) + ", got " + std::to_string(n));
  }
  if (n == kMaxEnumerationOrder && !options.allow_order_ten) {
    throw Error(Errc::OrderOutOfRange, "order 10 enumeration requires allow_order_ten");
  }
}

// Certificates bucketed by edge count. Buckets are compacted (sorted and
// de-duplicated) whenever they grow past twice their last compacted size.
class ShardedCertificateSet {
 public:
  explicit ShardedCertificateSet(int n) : shards_(static_cast<std::size_t>(pair_count(n) + 1)),
                                          compacted_(shards_.size(), 0) {}

  void insert(int edges, const PackedBits& bits) {
    auto& shard = shards_[static_cast<std::size_t>(edges)];
    shard.push_back(bits);
    auto& mark = compacted_[static_cast<std::size_t>(edges)];
    if (shard.size() > 2 * mark + 4096) {
      compact(shard);
      mark = shard.size();
    }
  }

  void merge(ShardedCertificateSet&& other) {
    for (std::size_t m = 0; m < shards_.size(); ++m) {
      auto& mine = shards_[m];
      auto& theirs = other.shards_[m];
      mine.insert(mine.end(), theirs.begin(), theirs.end());
      theirs.clear();
      theirs.shrink_to_fit();
    }
  }

  std::vector<std::vector<PackedBits>>& finish() {
    for (auto& shard : shards_) compact(shard);
    return shards_;
  }

 private:
  static void compact(std::vector<PackedBits>& shard) {
    std::sort(shard.begin(), shard.end());
    shard.erase(std::unique(shard.begin(), shard.end()), shard.end());
  }

  std::vector<std::vector<PackedBits>> shards_;
  std::vector<std::size_t> compacted_;
};

}  // namespace

std::uint64_t known_graph_count(int n) {
  if (n < 1 || n > kMaxEnumerationOrder) {
    throw Error(Errc::OrderOutOfRange, "no known count for order " + std::to_string(n));
  }
  return kKnownCounts[static_cast<std::size_t>(n)];
}

std::vector<Graph> extend_by_one_vertex(std::span<const Graph> parents, unsigned workers,
                                        std::uint64_t* candidates) {
  if (parents.empty()) return {};
  const int k = parents.front().order();
  const int n = k + 1;
  workers = resolve_workers(workers);

  std::vector<ShardedCertificateSet> partial(workers, ShardedCertificateSet(n));
  parallel_blocks(parents.size(), workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    auto& sink = partial[w];
    for (std::size_t i = begin; i < end; ++i) {
      const Graph& parent = parents[i];
      for (unsigned mask = 0; mask < (1U << k); ++mask) {
        const Graph child = parent.with_vertex(static_cast<VertexMask>(mask));
        sink.insert(child.edge_count(), certificate(child).bits);
      }
    }
  });
  if (candidates) *candidates += static_cast<std::uint64_t>(parents.size()) << k;

  for (std::size_t w = 1; w < partial.size(); ++w) partial[0].merge(std::move(partial[w]));
  auto& shards = partial[0].finish();

  std::vector<Graph> out;
  for (const auto& shard : shards) {
    for (const auto& bits : shard) out.push_back(Graph::from_bits(n, bits));
  }
  return out;
}

std::vector<Graph> enumerate_all(int n, const EnumerationOptions& options, EnumerationRun* run) {
  check_enumeration_order(n, options);
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t candidates = 1;
  std::vector<Graph> level{Graph::empty(1)};
  for (int k = 1; k < n; ++k) level = extend_by_one_vertex(level, options.workers, &candidates);
  if (run) {
    run->n = n;
    run->produced = level.size();
    run->candidates_examined = candidates;
    run->wall_time = std::chrono::steady_clock::now() - start;
  }
  return level;
}

std::vector<std::pair<int, std::uint64_t>> enumeration_counts(int n_max, const EnumerationOptions& options) {
  check_enumeration_order(n_max, options);
  std::vector<std::pair<int, std::uint64_t>> out;
  std::vector<Graph> level{Graph::empty(1)};
  out.emplace_back(1, level.size());
  for (int k = 1; k < n_max; ++k) {
    level = extend_by_one_vertex(level, options.workers);
    out.emplace_back(k + 1, level.size());
  }
  return out;
}

std::vector<Graph> import_graph6_atlas(int n, std::istream& in) {
  if (n < 1 || n > kMaxEnumerationOrder) {
    throw Error(Errc::OrderOutOfRange, "import order must be in 1..10, got " + std::to_string(n));
  }
  ShardedCertificateSet seen(n);
  std::uint64_t lines = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const Graph g = decode_graph6(line);
    if (g.order() != n) {
      throw Error(Errc::CorruptAtlas, "line " + std::to_string(lines + 1) + " has order " +
                                          std::to_string(g.order()) + ", expected " + std::to_string(n));
    }
    seen.insert(g.edge_count(), certificate(g).bits);
    ++lines;
  }
  std::vector<Graph> out;
  for (const auto& shard : seen.finish()) {
    for (const auto& bits : shard) out.push_back(Graph::from_bits(n, bits));
  }
  if (out.size() != lines) {
    throw Error(Errc::CorruptAtlas, std::to_string(lines - out.size()) + " duplicate isomorphism classes in import");
  }
  if (lines != known_graph_count(n)) {
    throw Error(Errc::CorruptAtlas, "import has " + std::to_string(lines) + " graphs, expected " +
                                        std::to_string(known_graph_count(n)));
  }
  return out;
}

}  // namespace samestats
