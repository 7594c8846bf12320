#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "samestats/edge_histogram.hpp"
#include "samestats/enumerate.hpp"
#include "samestats/graph.hpp"
#include "samestats/stats.hpp"

namespace samestats {

inline constexpr int kAtlasFormatVersion = 1;

struct AtlasRow {
  Graph graph;
  std::string graph6;
  StatVector stats;
};

// Complete ground-truth set for one order, in emission order.
struct Atlas {
  int n = 0;
  std::vector<AtlasRow> rows;
  EdgeHistogram histogram;
  double apl_ref = 1;  // maximum APL over the atlas

  std::vector<StatVector> stats() const;
};

struct AtlasManifest {
  int n = 0;
  std::uint64_t count = 0;
  std::string sha256_graphs;
  std::string sha256_stats;
  double apl_ref = 1;
  int format_version = kAtlasFormatVersion;
  std::string built_at;
};

// graphs_n<N>.g6, stats_n<N>.csv and manifest_n<N>.json under one directory.
// The manifest is written last and is the commit point of a build.
struct AtlasFileSet {
  std::filesystem::path graphs;
  std::filesystem::path stats;
  std::filesystem::path manifest;
};

AtlasFileSet atlas_paths(const std::filesystem::path& dir, int n);

// CSV column order: graph6,n,m,triangles,girth,acc,gcc,scc,apl,r,diam,den,rt,cv,ce
std::string_view stats_csv_header() noexcept;
std::string format_stats_row(std::string_view graph6, const StatVector& sv);
// Returns the graph6 column through graph6_out when non-null.
StatVector parse_stats_row(std::string_view line, std::string* graph6_out = nullptr);
// 12 significant digits.
std::string format_real(double value);

std::string sha256_hex(std::string_view bytes);

// Largest APL in the set; 1 when every APL is zero.
double max_apl(std::span<const StatVector> stats) noexcept;

// Enumerates and evaluates in memory without touching the filesystem.
Atlas make_atlas(int n, const EnumerationOptions& options = {});

AtlasManifest build_atlas(int n, const std::filesystem::path& dir, const EnumerationOptions& options = {});
AtlasManifest read_manifest(const std::filesystem::path& dir, int n);
Atlas load_atlas(int n, const std::filesystem::path& dir);
bool atlas_exists(const std::filesystem::path& dir, int n);
// Orders with a manifest present, ascending.
std::vector<int> available_atlases(const std::filesystem::path& dir);

}  // namespace samestats
