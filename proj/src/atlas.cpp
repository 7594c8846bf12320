#include "samestats/atlas.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "samestats/error.hpp"
#include "samestats/graph6.hpp"
#include "samestats/parallel.hpp"

namespace samestats {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kHeader = "graph6,n,m,triangles,girth,acc,gcc,scc,apl,r,diam,den,rt,cv,ce";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingAtlas, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(Errc::IoError, "short write to " + path.string());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Exclusive build lock, released on scope exit.
class BuildLock {
 public:
  explicit BuildLock(fs::path path) : path_(std::move(path)) {
    std::FILE* f = std::fopen(path_.c_str(), "wx");
    if (f == nullptr) throw Error(Errc::IoError, "atlas build already in progress (" + path_.string() + ")");
    std::fclose(f);
  }
  BuildLock(const BuildLock&) = delete;
  BuildLock& operator=(const BuildLock&) = delete;
  ~BuildLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }

 private:
  fs::path path_;
};

template <typename T>
T parse_number(std::string_view field, std::string_view column) {
  T value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(Errc::CorruptAtlas, "bad value '" + std::string(field) + "' in column " + std::string(column));
  }
  return value;
}

std::vector<StatVector> evaluate(std::span<const Graph> graphs) {
  std::vector<StatVector> out(graphs.size());
  parallel_blocks(graphs.size(), 0, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = stat_vector(graphs[i]);
  });
  return out;
}

}  // namespace

std::uint64_t EdgeHistogram::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

bool EdgeHistogram::complement_symmetric() const noexcept {
  return std::equal(counts.begin(), counts.end(), counts.rbegin());
}

EdgeHistogram edge_histogram(int n, std::span<const StatVector> stats) {
  EdgeHistogram hist;
  hist.n = n;
  hist.counts.assign(static_cast<std::size_t>(pair_count(n) + 1), 0);
  for (const auto& sv : stats) {
    if (sv.n != n || sv.m < 0 || sv.m > pair_count(n)) throw Error(Errc::BadParam, "statistics row does not belong to order " + std::to_string(n));
    ++hist.counts[static_cast<std::size_t>(sv.m)];
  }
  return hist;
}

std::vector<StatVector> Atlas::stats() const {
  std::vector<StatVector> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.stats);
  return out;
}

AtlasFileSet atlas_paths(const fs::path& dir, int n) {
  const std::string suffix = "_n" + std::to_string(n);
  return {dir / ("graphs" + suffix + ".g6"), dir / ("stats" + suffix + ".csv"), dir / ("manifest" + suffix + ".json")};
}

std::string_view stats_csv_header() noexcept { return kHeader; }

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_stats_row(std::string_view graph6, const StatVector& sv) {
  std::string row(graph6);
  auto add_int = [&row](long long v) {
    row.push_back(',');
    row += std::to_string(v);
  };
  auto add_real = [&row](double v) {
    row.push_back(',');
    row += format_real(v);
  };
  add_int(sv.n);
  add_int(sv.m);
  add_int(sv.triangles);
  add_int(sv.girth);
  add_real(sv.acc);
  add_real(sv.gcc);
  add_real(sv.scc);
  add_real(sv.apl);
  row.push_back(',');
  if (sv.r) row += format_real(*sv.r);
  add_int(sv.diam);
  add_real(sv.den);
  add_real(sv.rt);
  add_int(sv.cv);
  add_int(sv.ce);
  return row;
}

StatVector parse_stats_row(std::string_view line, std::string* graph6_out) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::array<std::string_view, 15> fields;
  std::size_t count = 0;
  while (count < fields.size()) {
    const auto comma = line.find(',');
    fields[count++] = line.substr(0, comma);
    if (comma == std::string_view::npos) {
      line = {};
      break;
    }
    line.remove_prefix(comma + 1);
  }
  if (count != fields.size() || !line.empty()) throw Error(Errc::CorruptAtlas, "stats row must have 15 columns");
  if (graph6_out) *graph6_out = std::string(fields[0]);
  StatVector sv;
  sv.n = parse_number<int>(fields[1], "n");
  sv.m = parse_number<int>(fields[2], "m");
  sv.triangles = parse_number<int>(fields[3], "triangles");
  sv.girth = parse_number<int>(fields[4], "girth");
  sv.acc = parse_number<double>(fields[5], "acc");
  sv.gcc = parse_number<double>(fields[6], "gcc");
  sv.scc = parse_number<double>(fields[7], "scc");
  sv.apl = parse_number<double>(fields[8], "apl");
  if (!fields[9].empty()) sv.r = parse_number<double>(fields[9], "r");
  sv.diam = parse_number<int>(fields[10], "diam");
  sv.den = parse_number<double>(fields[11], "den");
  sv.rt = parse_number<double>(fields[12], "rt");
  sv.cv = parse_number<int>(fields[13], "cv");
  sv.ce = parse_number<int>(fields[14], "ce");
  return sv;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::IoError, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

double max_apl(std::span<const StatVector> stats) noexcept {
  double best = 0;
  for (const auto& sv : stats) best = std::max(best, sv.apl);
  return best > 0 ? best : 1.0;
}

Atlas make_atlas(int n, const EnumerationOptions& options) {
  if (n < 2) throw Error(Errc::OrderTooSmall, "atlas statistics need n >= 2");
  const std::vector<Graph> graphs = enumerate_all(n, options);
  const std::vector<StatVector> stats = evaluate(graphs);
  Atlas atlas;
  atlas.n = n;
  atlas.rows.reserve(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) atlas.rows.push_back({graphs[i], encode_graph6(graphs[i]), stats[i]});
  atlas.histogram = edge_histogram(n, stats);
  atlas.apl_ref = max_apl(stats);
  return atlas;
}

AtlasManifest build_atlas(int n, const fs::path& dir, const EnumerationOptions& options) {
  if (n < 2) throw Error(Errc::OrderTooSmall, "atlas statistics need n >= 2");
  if (n > kMaxEnumerationOrder) throw Error(Errc::OrderOutOfRange, "atlas order must be at most 10");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + dir.string() + ": " + ec.message());
  const AtlasFileSet paths = atlas_paths(dir, n);
  BuildLock lock(dir / ("build_n" + std::to_string(n) + ".lock"));

  const Atlas atlas = make_atlas(n, options);
  std::string graphs_text;
  std::string stats_text(stats_csv_header());
  stats_text.push_back('\n');
  for (const auto& row : atlas.rows) {
    graphs_text += row.graph6;
    graphs_text.push_back('\n');
    stats_text += format_stats_row(row.graph6, row.stats);
    stats_text.push_back('\n');
  }

  AtlasManifest manifest;
  manifest.n = n;
  manifest.count = atlas.rows.size();
  manifest.sha256_graphs = sha256_hex(graphs_text);
  manifest.sha256_stats = sha256_hex(stats_text);
  manifest.apl_ref = atlas.apl_ref;
  manifest.built_at = utc_timestamp();
  const nlohmann::json doc = {{"n", manifest.n},
                              {"count", manifest.count},
                              {"sha256_graphs", manifest.sha256_graphs},
                              {"sha256_stats", manifest.sha256_stats},
                              {"apl_ref", manifest.apl_ref},
                              {"format_version", manifest.format_version},
                              {"built_at", manifest.built_at}};

  // Drop the old commit point first so a crash never pairs it with new data.
  fs::remove(paths.manifest, ec);
  const std::string tmp = ".tmp" + std::to_string(::getpid());
  auto staged = [&tmp](const fs::path& p) { return fs::path(p.string() + tmp); };
  write_file(staged(paths.graphs), graphs_text);
  write_file(staged(paths.stats), stats_text);
  write_file(staged(paths.manifest), doc.dump(2) + "\n");
  fs::rename(staged(paths.graphs), paths.graphs);
  fs::rename(staged(paths.stats), paths.stats);
  fs::rename(staged(paths.manifest), paths.manifest);
  return manifest;
}

AtlasManifest read_manifest(const fs::path& dir, int n) {
  const AtlasFileSet paths = atlas_paths(dir, n);
  if (!fs::exists(paths.manifest)) throw Error(Errc::MissingAtlas, "no atlas for n=" + std::to_string(n) + " in " + dir.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(paths.manifest));
    AtlasManifest m;
    m.n = doc.at("n").get<int>();
    m.count = doc.at("count").get<std::uint64_t>();
    m.sha256_graphs = doc.at("sha256_graphs").get<std::string>();
    m.sha256_stats = doc.at("sha256_stats").get<std::string>();
    m.apl_ref = doc.at("apl_ref").get<double>();
    m.format_version = doc.at("format_version").get<int>();
    m.built_at = doc.value("built_at", "");
    if (m.n != n) throw Error(Errc::CorruptAtlas, "manifest order mismatch");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::CorruptAtlas, "bad manifest " + paths.manifest.string() + ": " + e.what());
  }
}

Atlas load_atlas(int n, const fs::path& dir) {
  const AtlasManifest manifest = read_manifest(dir, n);
  if (manifest.format_version != kAtlasFormatVersion) throw Error(Errc::CorruptAtlas, "unsupported atlas format version");
  const AtlasFileSet paths = atlas_paths(dir, n);
  const std::string graphs_text = read_file(paths.graphs);
  const std::string stats_text = read_file(paths.stats);
  if (sha256_hex(graphs_text) != manifest.sha256_graphs) throw Error(Errc::CorruptAtlas, "checksum mismatch for " + paths.graphs.string());
  if (sha256_hex(stats_text) != manifest.sha256_stats) throw Error(Errc::CorruptAtlas, "checksum mismatch for " + paths.stats.string());

  Atlas atlas;
  atlas.n = n;
  atlas.apl_ref = manifest.apl_ref;
  atlas.rows.reserve(manifest.count);
  std::string_view graphs_view = graphs_text;
  std::string_view stats_view = stats_text;
  auto next_line = [](std::string_view& text) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    return line;
  };
  if (next_line(stats_view) != kHeader) throw Error(Errc::CorruptAtlas, "unexpected stats header");
  while (!graphs_view.empty()) {
    const std::string_view g6 = next_line(graphs_view);
    if (stats_view.empty()) throw Error(Errc::CorruptAtlas, "stats file shorter than graphs file");
    std::string csv_g6;
    StatVector sv = parse_stats_row(next_line(stats_view), &csv_g6);
    if (csv_g6 != g6) throw Error(Errc::CorruptAtlas, "graph6 mismatch between graphs and stats files");
    Graph g = decode_graph6(g6);
    if (g.order() != n || sv.n != n) throw Error(Errc::CorruptAtlas, "row of wrong order");
    atlas.rows.push_back({std::move(g), std::move(csv_g6), sv});
  }
  if (!stats_view.empty()) throw Error(Errc::CorruptAtlas, "stats file longer than graphs file");
  if (atlas.rows.size() != manifest.count) throw Error(Errc::CorruptAtlas, "row count differs from manifest");
  atlas.histogram = edge_histogram(n, atlas.stats());
  return atlas;
}

bool atlas_exists(const fs::path& dir, int n) { return fs::exists(atlas_paths(dir, n).manifest); }

std::vector<int> available_atlases(const fs::path& dir) {
  std::vector<int> out;
  for (int n = 2; n <= kMaxEnumerationOrder; ++n) {
    if (atlas_exists(dir, n)) out.push_back(n);
  }
  return out;
}

}  // namespace samestats
