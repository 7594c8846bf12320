#include "samestats/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "samestats/analysis.hpp"
#include "samestats/atlas.hpp"
#include "samestats/finder.hpp"
#include "samestats/generators.hpp"
#include "samestats/graph6.hpp"
#include "samestats/report_json.hpp"
#include "samestats/service.hpp"

namespace samestats {

namespace fs = std::filesystem;

namespace {

std::string default_atlas_dir() {
  const char* env = std::getenv("ATLAS_DIR");
  return env != nullptr && *env != '\0' ? env : "atlas";
}

struct ModelFlags {
  std::string model = "er-half";
  std::string edge_strategy;
  std::optional<double> p;
  std::optional<int> k;
  std::optional<int> m;
  std::optional<double> radius;

  void attach(CLI::App* cmd, bool required_model) {
    auto* opt = cmd->add_option("--model", model, "generator model");
    if (required_model) opt->required();
    cmd->add_option("--edge-strategy", edge_strategy, "uniform|population (ER and G(n,M) models)");
    cmd->add_option("--p", p, "fixed edge or rewiring probability");
    cmd->add_option("--k", k, "fixed WS ring degree");
    cmd->add_option("--m", m, "fixed BA attachment count or G(n,M) edge count");
    cmd->add_option("--radius", radius, "fixed geometric radius");
  }

  Model resolve() const {
    Model parsed = parse_model(model);
    if (edge_strategy.empty()) return parsed;
    const bool population = edge_strategy == "population";
    if (!population && edge_strategy != "uniform") {
      throw Error(Errc::BadParam, "edge strategy must be uniform or population");
    }
    switch (parsed) {
      case Model::ErPHalf:
      case Model::ErUniformP:
      case Model::ErPopulation: return population ? Model::ErPopulation : Model::ErUniformP;
      case Model::GnmUniformE:
      case Model::GnmPopulationE: return population ? Model::GnmPopulationE : Model::GnmUniformE;
      default: throw Error(Errc::BadParam, "edge strategy applies to ER and G(n,M) models only");
    }
  }

  GeneratorConfig config(int n, std::size_t count, std::uint64_t seed) const {
    GeneratorConfig c;
    c.model = resolve();
    c.n = n;
    c.count = count;
    c.seed = seed;
    c.fixed = {p, k, m, radius};
    return c;
  }
};

struct SampleSize {
  std::optional<double> rate;
  std::optional<std::size_t> count;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rate", rate, "sample size as a fraction of the atlas size");
    cmd->add_option("--count", count, "sample size");
  }

  std::size_t resolve(int n, double default_rate) const {
    if (count) {
      if (*count < 1) throw Error(Errc::BadParam, "count must be at least 1");
      return *count;
    }
    const double r = rate.value_or(default_rate);
    if (!(r > 0 && r <= 1)) throw Error(Errc::BadParam, "rate must lie in (0,1]");
    if (n > kMaxEnumerationOrder) throw Error(Errc::BadParam, "--rate needs an enumerable order; use --count");
    const auto population = static_cast<double>(known_graph_count(n));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(r * population)));
  }
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  const Atlas& atlas(int n) {
    if (auto it = atlases_.find(n); it != atlases_.end()) return it->second;
    if (!atlas_exists(atlas_dir_, n)) {
      throw Error(Errc::MissingAtlas, "no atlas for n=" + std::to_string(n) + " under " + atlas_dir_ +
                                          " (run `enumerate --n " + std::to_string(n) + "`)");
    }
    return atlases_.emplace(n, load_atlas(n, atlas_dir_)).first->second;
  }

  const EdgeHistogram* histogram_for(const GeneratorConfig& c) {
    return needs_histogram(c.model) ? &atlas(c.n).histogram : nullptr;
  }

  void emit(const Json& j) { out_ << j.dump(2) << '\n'; }

  void cmd_enumerate();
  void cmd_stats();
  void cmd_generate();
  void cmd_correlate();
  void cmd_coverage();
  void cmd_compare();
  void cmd_trends();
  void cmd_find();
  void cmd_presets();
  void cmd_serve();

  std::ostream& out_;
  std::ostream& err_;
  std::string atlas_dir_ = default_atlas_dir();
  unsigned workers_ = 0;
  std::map<int, Atlas> atlases_;

  int n_ = 0;
  std::uint64_t seed_ = 0;
  std::string out_path_;
  std::string in_path_;
  bool allow_order_ten_ = false;
  bool count_only_ = false;
  bool reuse_ = false;
  ModelFlags model_;
  SampleSize size_;
  std::string source_ = "atlas";
  std::string sample_dir_;
  int runs_ = 10;
  std::string metric_ = "ks";
  std::string stat_ = "all";
  int bins_ = kDefaultKlBins;
  double eps_ = kDefaultKlSmoothing;
  int n_min_ = 5;
  int n_max_ = 9;
  std::size_t count_per_n_ = 10000;
  std::vector<std::string> fixes_;
  std::string vary_;
  std::string preset_;
  std::string rt_mode_ = "cubic";
  std::string host_ = "127.0.0.1";
  int port_ = 8080;
};

fs::path sample_graphs_path(const fs::path& dir, int n) { return dir / ("sample_n" + std::to_string(n) + ".g6"); }
fs::path sample_stats_path(const fs::path& dir, int n) { return dir / ("sample_n" + std::to_string(n) + ".csv"); }

std::vector<StatVector> read_sample_stats(const fs::path& dir, int n) {
  const fs::path path = sample_stats_path(dir, n);
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != stats_csv_header()) throw Error(Errc::CorruptAtlas, path.string() + " has an unexpected header");
  std::vector<StatVector> stats;
  while (std::getline(in, line)) {
    if (!line.empty()) stats.push_back(parse_stats_row(line));
  }
  if (stats.empty()) throw Error(Errc::EmptyInput, path.string() + " holds no rows");
  return stats;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
}

Constraint parse_fix(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 2 && parts.size() != 3) {
    throw Error(Errc::BadQuery, "--fix expects STAT:MIN:MAX or STAT:VALUE, got '" + text + "'");
  }
  Constraint c;
  c.stat = parse_stat(parts[0]);
  try {
    c.min = std::stod(parts[1]);
    c.max = std::stod(parts.back());
  } catch (const std::logic_error&) {
    throw Error(Errc::BadQuery, "non-numeric bound in --fix '" + text + "'");
  }
  return c;
}

void Cli::cmd_enumerate() {
  EnumerationOptions options;
  options.allow_order_ten = allow_order_ten_;
  options.workers = workers_;
  const std::string dir = out_path_.empty() ? atlas_dir_ : out_path_;
  if (reuse_ && n_ > 1 && atlas_exists(dir, n_)) {
    const AtlasManifest m = read_manifest(dir, n_);
    emit(Json{{"n", m.n}, {"count", m.count}, {"written", false}, {"dir", dir}, {"apl_ref", m.apl_ref},
              {"sha256_graphs", m.sha256_graphs}, {"sha256_stats", m.sha256_stats}});
    return;
  }
  if (count_only_ || n_ == 1) {
    EnumerationRun run;
    const auto graphs = enumerate_all(n_, options, &run);
    emit(Json{{"n", n_}, {"count", graphs.size()}, {"written", false}});
    return;
  }
  const AtlasManifest m = build_atlas(n_, dir, options);
  emit(Json{{"n", m.n}, {"count", m.count}, {"written", true}, {"dir", dir}, {"apl_ref", m.apl_ref},
            {"sha256_graphs", m.sha256_graphs}, {"sha256_stats", m.sha256_stats}});
}

void Cli::cmd_stats() {
  std::ifstream in(in_path_);
  if (!in) throw Error(Errc::IoError, "cannot read " + in_path_);
  std::string csv(stats_csv_header());
  csv += '\n';
  Json rejected = Json::array();
  Json rows = Json::array();
  std::size_t written = 0;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      const Graph g = decode_graph6(line);
      const StatVector sv = stat_vector(g);
      const std::string g6 = encode_graph6(g);
      csv += format_stats_row(g6, sv);
      csv += '\n';
      if (out_path_.empty()) rows.push_back(Json{{"graph6", g6}, {"stats", to_json(sv)}});
      ++written;
    } catch (const Error& e) {
      rejected.push_back(Json{{"line", line_no}, {"graph6", line}, {"error", to_string(e.code())}, {"message", e.what()}});
    }
  }
  Json summary{{"rows", written}, {"rejected", rejected}};
  if (out_path_.empty()) {
    summary["stats"] = rows;
  } else {
    write_text(out_path_, csv);
    summary["out"] = out_path_;
  }
  emit(summary);
}

void Cli::cmd_generate() {
  const GeneratorConfig config = model_.config(n_, size_.resolve(n_, 0.01), seed_);
  const Sample sample = sample_batch(config, histogram_for(config), workers_);
  Json summary{{"model", model_name(config.model)}, {"n", config.n}, {"count", config.count}, {"seed", config.seed}};
  const fs::path dir = out_path_.empty() ? fs::path(".") : fs::path(out_path_);
  fs::create_directories(dir);
  std::string graphs;
  std::string csv(stats_csv_header());
  csv += '\n';
  for (std::size_t i = 0; i < sample.graphs.size(); ++i) {
    const std::string g6 = encode_graph6(sample.graphs[i]);
    graphs += g6 + '\n';
    csv += format_stats_row(g6, sample.stats[i]) + '\n';
  }
  write_text(sample_graphs_path(dir, n_), graphs);
  write_text(sample_stats_path(dir, n_), csv);
  summary["graphs"] = sample_graphs_path(dir, n_).string();
  summary["stats"] = sample_stats_path(dir, n_).string();
  std::vector<std::size_t> edge_counts(static_cast<std::size_t>(pair_count(n_) + 1), 0);
  for (const auto& sv : sample.stats) ++edge_counts[static_cast<std::size_t>(sv.m)];
  summary["edge_count_histogram"] = edge_counts;
  emit(summary);
}

void Cli::cmd_correlate() {
  Json out{{"n", n_}, {"source", source_}};
  if (source_ == "atlas") {
    const Atlas& a = atlas(n_);
    out["matrix"] = to_json(correlation_matrix(normalize_all(a.stats(), a.apl_ref)));
  } else if (source_ == "sample") {
    std::vector<StatVector> stats;
    if (!sample_dir_.empty()) {
      stats = read_sample_stats(sample_dir_, n_);
    } else {
      const GeneratorConfig config = model_.config(n_, size_.resolve(n_, 0.01), seed_);
      stats = sample_batch(config, histogram_for(config), workers_).stats;
      out["model"] = model_name(config.model);
      out["seed"] = seed_;
    }
    const double apl_ref = n_ <= kMaxEnumerationOrder && atlas_exists(atlas_dir_, n_) ? atlas(n_).apl_ref : max_apl(stats);
    out["matrix"] = to_json(correlation_matrix(normalize_all(stats, apl_ref)));
  } else {
    throw Error(Errc::BadParam, "--source must be atlas or sample");
  }
  emit(out);
}

void Cli::cmd_coverage() {
  if (runs_ < 1) throw Error(Errc::BadParam, "--runs must be at least 1");
  const Atlas& a = atlas(n_);
  const std::vector<StatVector> truth = a.stats();
  std::vector<CoverageReport> reports;
  Json per_run = Json::array();
  GeneratorConfig config = model_.config(n_, size_.resolve(n_, 0.01), seed_);
  for (int r = 0; r < runs_; ++r) {
    config.seed = seed_ + static_cast<std::uint64_t>(r);
    const Sample sample = sample_batch(config, histogram_for(config), workers_);
    reports.push_back(bounding_box_ratio(sample.stats, truth));
    per_run.push_back(Json{{"seed", config.seed}, {"volume_ratio", reports.back().volume_ratio}});
  }
  Json out = to_json(average_coverage(reports));
  out["model"] = model_name(config.model);
  out["n"] = n_;
  out["count"] = config.count;
  out["per_run"] = per_run;
  emit(out);
}

void Cli::cmd_compare() {
  const Atlas& a = atlas(n_);
  const std::vector<StatVector> truth = a.stats();
  const GeneratorConfig config = model_.config(n_, size_.resolve(n_, 0.01), seed_);
  const Sample sample = sample_batch(config, histogram_for(config), workers_);
  if (metric_ != "ks" && metric_ != "kl") throw Error(Errc::BadParam, "--metric must be ks or kl");
  std::vector<Stat> stats;
  if (stat_ == "all") {
    stats.assign(kTenStats.begin(), kTenStats.end());
  } else {
    stats.push_back(parse_stat(stat_));
  }
  Json results = Json::array();
  for (Stat s : stats) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& sv : sample.stats) xs.push_back(sv.value(s));
    for (const auto& sv : truth) ys.push_back(sv.value(s));
    const double value = metric_ == "ks" ? ks_statistic(xs, ys) : kl_divergence(xs, ys, bins_, eps_);
    results.push_back(Json{{"stat", stat_name(s)}, {"value", value}});
  }
  Json out{{"n", n_}, {"model", model_name(config.model)}, {"count", config.count}, {"seed", seed_}, {"metric", metric_}};
  if (metric_ == "kl") {
    out["bins"] = bins_;
    out["smoothing"] = eps_;
    out["direction"] = "KL(sample || atlas)";
  }
  out["results"] = results;
  emit(out);
}

void Cli::cmd_trends() {
  GeneratorConfig config = model_.config(n_min_, count_per_n_, seed_);
  const auto series =
      correlation_trends(n_min_, n_max_, config, count_per_n_, [this](int n) -> const Atlas* { return &atlas(n); });
  emit(Json{{"model", model_name(config.model)},
            {"n_min", n_min_},
            {"n_max", n_max_},
            {"count_per_n", count_per_n_},
            {"seed", seed_},
            {"series", to_json(std::span<const TrendSeries>(series))}});
}

void Cli::cmd_find() {
  const RtMode mode = parse_rt_mode(rt_mode_);
  FilterQuery q;
  std::string name;
  if (!preset_.empty()) {
    const auto preset = find_preset(preset_, mode);
    if (!preset) throw Error(Errc::BadQuery, "unknown preset '" + preset_ + "'");
    q = preset->query;
    name = preset->name;
    if (n_ != 0 && n_ != q.n) throw Error(Errc::BadQuery, "preset " + name + " is defined for n=" + std::to_string(q.n));
  } else {
    if (n_ == 0) throw Error(Errc::BadQuery, "find needs --n or --preset");
    if (vary_.empty()) throw Error(Errc::BadQuery, "find needs --vary or --preset");
    q.n = n_;
    q.rt_mode = mode;
  }
  if (!vary_.empty()) q.vary = parse_stat(vary_);
  for (const auto& f : fixes_) q.constraints.push_back(parse_fix(f));
  validate_query(q);
  const Atlas& a = atlas(q.n);
  const std::vector<Match> matches = query(q, a);
  const SlotResult result = slotize(matches, q, a.apl_ref);
  Json out = to_json(result);
  if (!name.empty()) out["preset"] = name;
  out["query"] = to_json(q);
  if (!out_path_.empty()) {
    fs::create_directories(out_path_);
    std::vector<std::vector<std::string>> per_slot(result.slots.size());
    for (const auto& m : matches) {
      if (auto idx = slot_of(m.stats, q, a.apl_ref)) per_slot[*idx].push_back(m.graph6);
    }
    Json files = Json::array();
    for (std::size_t i = 0; i < per_slot.size(); ++i) {
      if (per_slot[i].empty()) continue;
      std::sort(per_slot[i].begin(), per_slot[i].end());
      std::string text;
      for (const auto& g6 : per_slot[i]) text += g6 + '\n';
      const fs::path path = fs::path(out_path_) / ("slot_" + std::to_string(i) + ".g6");
      write_text(path, text);
      files.push_back(path.string());
    }
    out["files"] = files;
  }
  emit(out);
}

void Cli::cmd_presets() {
  Json out = Json::array();
  for (const auto& p : preset_experiments(parse_rt_mode(rt_mode_))) {
    out.push_back(Json{{"name", p.name}, {"description", p.description}, {"query", to_json(p.query)}});
  }
  emit(out);
}

void Cli::cmd_serve() {
  Service service({atlas_dir_, 100000, 20000, workers_});
  if (service.bind(host_, port_) <= 0) throw Error(Errc::IoError, "cannot bind " + host_ + ":" + std::to_string(port_));
  err_ << "serving " << atlas_dir_ << " on http://" << host_ << ':' << service.port() << std::endl;
  service.serve_bound();
}

int Cli::run(const std::vector<std::string>& args) {
  CLI::App app{"Ground-truth graph statistics: enumerate, sample, compare and search small graphs"};
  app.name("samestats");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--atlas-dir", atlas_dir_, "atlas directory (default $ATLAS_DIR or ./atlas)");
  app.add_option("--workers", workers_, "worker threads (0 = all cores)");
  app.add_flag("--json", "JSON output (always on)");

  auto* enumerate = app.add_subcommand("enumerate", "build the ground-truth atlas for one order");
  enumerate->add_option("--n", n_, "order")->required()->check(CLI::Range(1, kMaxEnumerationOrder));
  enumerate->add_option("--out", out_path_, "output directory (default atlas dir)");
  enumerate->add_flag("--allow-order-ten", allow_order_ten_, "permit the n=10 build");
  enumerate->add_flag("--count-only", count_only_, "report the count without writing files");
  enumerate->add_flag("--reuse", reuse_, "keep an existing atlas instead of rebuilding");

  auto* stats = app.add_subcommand("stats", "statistics for every graph in a graph6 file");
  stats->add_option("--in", in_path_, "graph6 input")->required();
  stats->add_option("--out", out_path_, "CSV output (omit to inline stats in the JSON)");

  auto* generate = app.add_subcommand("generate", "draw a seeded sample from a generator model");
  generate->add_option("--n", n_, "order")->required();
  generate->add_option("--seed", seed_, "seed");
  generate->add_option("--out", out_path_, "output directory");
  model_.attach(generate, true);
  size_.attach(generate);

  auto* correlate = app.add_subcommand("correlate", "pairwise Pearson matrix of the ten statistics");
  correlate->add_option("--n", n_, "order")->required();
  correlate->add_option("--source", source_, "atlas|sample");
  correlate->add_option("--sample", sample_dir_, "directory written by generate");
  correlate->add_option("--seed", seed_, "seed when drawing a sample in place");
  model_.attach(correlate, false);
  size_.attach(correlate);

  auto* coverage = app.add_subcommand("coverage", "bounding-box coverage of a generator against the atlas");
  coverage->add_option("--n", n_, "order")->required();
  coverage->add_option("--runs", runs_, "independent runs to average");
  coverage->add_option("--seed", seed_, "seed of the first run");
  model_.attach(coverage, true);
  size_.attach(coverage);

  auto* compare = app.add_subcommand("compare", "per-statistic distribution distance to the atlas");
  compare->add_option("--n", n_, "order")->required();
  compare->add_option("--metric", metric_, "ks|kl");
  compare->add_option("--stat", stat_, "statistic name or 'all'");
  compare->add_option("--bins", bins_, "KL histogram bins");
  compare->add_option("--eps", eps_, "KL additive smoothing");
  compare->add_option("--seed", seed_, "seed");
  model_.attach(compare, true);
  size_.attach(compare);

  auto* trends = app.add_subcommand("trends", "correlation of each statistic pair across orders");
  trends->add_option("--n-min", n_min_, "smallest order");
  trends->add_option("--n-max", n_max_, "largest order");
  trends->add_option("--count-per-n", count_per_n_, "generator draws per order");
  trends->add_option("--seed", seed_, "seed");
  model_.attach(trends, false);

  auto* find_cmd = app.add_subcommand("find", "same statistics, different graphs");
  find_cmd->add_option("--n", n_, "order");
  find_cmd->add_option("--fix", fixes_, "STAT:MIN:MAX or STAT:VALUE (repeatable)");
  find_cmd->add_option("--vary", vary_, "free statistic");
  find_cmd->add_option("--preset", preset_, "named query");
  find_cmd->add_option("--rt-mode", rt_mode_, "triangle ratio denominator: cubic|table1");
  find_cmd->add_option("--out", out_path_, "directory for per-slot graph6 files");

  auto* presets = app.add_subcommand("presets", "list the named queries");
  presets->add_option("--rt-mode", rt_mode_, "cubic|table1");

  auto* serve = app.add_subcommand("serve", "HTTP API over the atlas directory");
  serve->add_option("--host", host_, "bind address");
  serve->add_option("--port", port_, "port");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out_ << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out_ << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err_ << e.what() << '\n';
    return 2;
  }
  try {
    if (enumerate->parsed()) cmd_enumerate();
    if (stats->parsed()) cmd_stats();
    if (generate->parsed()) cmd_generate();
    if (correlate->parsed()) cmd_correlate();
    if (coverage->parsed()) cmd_coverage();
    if (compare->parsed()) cmd_compare();
    if (trends->parsed()) cmd_trends();
    if (find_cmd->parsed()) cmd_find();
    if (presets->parsed()) cmd_presets();
    if (serve->parsed()) cmd_serve();
  } catch (const Error& e) {
    emit(error_json(e));
    err_ << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    emit(Json{{"error", "Internal"}, {"message", e.what()}});
    err_ << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  return cli.run(args);
}

}  // namespace samestats
