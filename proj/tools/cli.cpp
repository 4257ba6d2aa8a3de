#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "homonet/calibrate.hpp"
#include "homonet/error.hpp"
#include "homonet/netmetrics.hpp"
#include "homonet/parallel.hpp"
#include "homonet/pipeline.hpp"
#include "homonet/sampling.hpp"

namespace homonet::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Globals {
  std::optional<std::string> config;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::optional<std::string> out;
  std::size_t max_edges = 50'000'000;

  linkgen::GenerateOptions generate_options() const {
    return {.workers = workers, .max_edges = max_edges};
  }
};

fs::path run_dir(const Globals& g) {
  if (g.out) return *g.out;
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream name;
  name << std::put_time(&tm, "%Y%m%dT%H%M%S") << "_seed" << g.seed;
  return fs::path("runs") / name.str();
}

GeneratorConfig load_config(const Globals& g) {
  std::optional<fs::path> file;
  if (g.config) file = *g.config;
  return load_generator_config(default_data_dir(), file);
}

std::vector<std::uint64_t> seed_list(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = first + i;
  return seeds;
}

// Manifest written next to the artifacts it lists; timings and worker count
// are the only fields that may differ between otherwise identical runs.
class Manifest {
 public:
  Manifest(std::string subcommand, const Globals& g) {
    doc_["subcommand"] = std::move(subcommand);
    doc_["seed"] = g.seed;
    doc_["workers"] = resolve_workers(g.workers);
    doc_["inputs"] = json::array();
    doc_["outputs"] = json::object();
    doc_["timings"] = json::object();
  }
  json& operator[](const char* key) { return doc_[key]; }
  void input(const fs::path& p) { doc_["inputs"].push_back(p.string()); }
  void timing(const std::string& phase, double seconds) { doc_["timings"][phase] = seconds; }
  void output(const fs::path& p) { outputs_.push_back(p); }

  void write(const fs::path& dir) {
    for (const auto& p : outputs_) {
      doc_["outputs"][p.filename().string()] = sha256_file(p.string());
    }
    std::ofstream f(dir / "manifest.json");
    f << doc_.dump(2) << '\n';
    if (!f) throw LoadError("cannot write manifest in " + dir.string());
  }

 private:
  json doc_;
  std::vector<fs::path> outputs_;
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw LoadError("cannot write " + path.string());
  return f;
}

DirectedGraph load_graph(const std::string& path, std::optional<std::size_t> nodes,
                         LoadedGraph* keep = nullptr) {
  EdgeListOptions opts;
  opts.dense_node_count = nodes;
  LoadedGraph loaded = load_edge_list(fs::path(path), opts);
  DirectedGraph g = loaded.graph;
  if (keep != nullptr) *keep = std::move(loaded);
  return g;
}

std::vector<NodeId> sample_set(const DirectedGraph& g, const sampling::SampleSpec& spec) {
  switch (spec.method) {
    case sampling::Method::kRandomNode:
      return sampling::random_node_set(g, spec);
    case sampling::Method::kForestFire:
      return sampling::forest_fire_set(g, spec);
    case sampling::Method::kRandomWalk:
      return sampling::random_walk_set(g, spec);
    case sampling::Method::kPageRankNode:
      return sampling::pagerank_node_set(g, spec);
    case sampling::Method::kMhrw:
      return sampling::mhrw_set(g, spec);
  }
  throw InputError("unknown sampling method");
}

std::string format_double(double v, int precision = 6) {
  if (!std::isfinite(v)) return "nan";
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

metrics::ReferenceTargets load_targets(const std::optional<std::string>& path) {
  return path ? metrics::ReferenceTargets::load(*path) : metrics::ReferenceTargets::bluesky();
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::size_t n = 0;
  bool projection = false;
};

int cmd_generate(const Globals& g, const GenerateArgs& a, std::ostream& out) {
  if (a.n < 2) throw InputError("need at least 2 nodes");
  const auto cfg = load_config(g);
  const fs::path dir = run_dir(g);
  fs::create_directories(dir);
  Manifest manifest("generate", g);
  manifest["n"] = a.n;
  manifest["config"] = to_json(cfg);
  if (g.config) manifest.input(*g.config);

  const auto start = Clock::now();
  const auto net = generate(a.n, cfg, g.seed, g.generate_options());
  manifest.timing("profiles", net.profile_seconds);
  manifest.timing("projection", net.projection_seconds);
  manifest.timing("links", net.link_seconds);
  const auto& p = net.params;
  manifest["resolved"] = {{"n", p.n},         {"k", p.k},
                          {"delta", p.delta}, {"eta", p.eta},
                          {"candidates", p.candidates}, {"alpha", p.alpha},
                          {"beta", p.beta},   {"temperature", p.temperature},
                          {"logit_form", linkgen::to_string(p.logit_form)}};

  const auto write_start = Clock::now();
  {
    auto f = open_out(dir / "profiles.jsonl");
    write_profiles(f, net.profiles);
  }
  manifest.output(dir / "profiles.jsonl");
  write_edge_list(dir / "edges.csv", net.graph);
  manifest.output(dir / "edges.csv");
  if (a.projection) {
    auto f = open_out(dir / "projection.csv");
    net.projection.write_csv(f);
    f.close();
    manifest.output(dir / "projection.csv");
  }
  manifest.timing("write", seconds_since(write_start));
  manifest.timing("total", seconds_since(start));
  manifest.write(dir);
  out << "nodes " << net.graph.node_count() << ", edges " << net.graph.edge_count() << ", run "
      << dir.string() << '\n';
  return 0;
}

// ---- metrics --------------------------------------------------------------

struct MetricsArgs {
  std::string in;
  std::optional<std::size_t> nodes;
  std::size_t max_pairs = 1'000'000;
};

int cmd_metrics(const Globals& g, const MetricsArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path dir = run_dir(g);
  Manifest manifest("metrics", g);
  manifest.input(a.in);
  manifest["max_pairs"] = a.max_pairs;
  auto start = Clock::now();
  const DirectedGraph graph = load_graph(a.in, a.nodes);
  manifest.timing("load", seconds_since(start));
  start = Clock::now();
  const auto rep = metrics::report(
      graph, {.max_pairs = a.max_pairs, .seed = g.seed, .workers = g.workers});
  manifest.timing("metrics", seconds_since(start));
  fs::create_directories(dir);
  json j = metrics::to_json(rep);
  {
    auto f = open_out(dir / "metrics.json");
    f << j.dump(2) << '\n';
  }
  manifest.output(dir / "metrics.json");
  manifest.write(dir);
  out << j.dump(2) << '\n';
  if (!rep.complete()) {
    err << "error: undefined metric (graph has no edges)\n";
    return 2;
  }
  return 0;
}

// ---- calibrate ------------------------------------------------------------

struct CalibrateArgs {
  std::size_t n = 1000;
  std::size_t seeds = 10;
  std::optional<std::string> grid;
  std::optional<std::string> targets;
  bool resume = false;
  std::size_t checkpoint_every = 16;
  std::size_t max_pairs = 1'000'000;
  std::size_t top = 5;
  bool quiet = false;
};

int cmd_calibrate(const Globals& g, const CalibrateArgs& a, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config(g);
  const calibrate::GridSpec grid = a.grid ? calibrate::GridSpec::load(*a.grid) : calibrate::GridSpec{};
  const auto targets = load_targets(a.targets);
  const fs::path dir = run_dir(g);
  fs::create_directories(dir);
  Manifest manifest("calibrate", g);
  manifest["n"] = a.n;
  manifest["seeds"] = seed_list(g.seed, a.seeds);
  manifest["grid"] = grid.to_json();
  manifest["config"] = to_json(cfg);
  if (g.config) manifest.input(*g.config);
  if (a.grid) manifest.input(*a.grid);
  if (a.targets) manifest.input(*a.targets);

  calibrate::SearchOptions opts;
  opts.checkpoint = dir / "sweep.jsonl";
  opts.resume = a.resume;
  opts.checkpoint_every = a.checkpoint_every;
  opts.max_pairs = a.max_pairs;
  opts.workers = g.workers;
  opts.max_edges = g.max_edges;
  if (!a.quiet) {
    opts.progress = [&err](std::size_t done, std::size_t total) {
      err << "calibrate: " << done << "/" << total << '\n';
    };
  }
  const auto start = Clock::now();
  const auto outcome = calibrate::search(grid, cfg, a.n, seed_list(g.seed, a.seeds), targets, opts);
  manifest.timing("search", seconds_since(start));
  manifest["evaluated_now"] = outcome.evaluated_now;
  manifest.output(dir / "sweep.jsonl");
  {
    auto f = open_out(dir / "ranking.jsonl");
    calibrate::write_ranking(f, outcome);
  }
  manifest.output(dir / "ranking.jsonl");
  {
    auto f = open_out(dir / "summary.tsv");
    calibrate::write_summary(f, outcome, a.top);
  }
  manifest.output(dir / "summary.tsv");
  manifest.write(dir);
  calibrate::write_summary(out, outcome, a.top);
  return 0;
}

// ---- sample ---------------------------------------------------------------

struct SampleArgs {
  std::string in;
  std::optional<std::size_t> nodes;
  std::string method = "random_node";
  std::size_t target = 0;
  double forward_burning = 0.7;
  double restart = 0.15;
  double damping = 0.85;
};

int cmd_sample(const Globals& g, const SampleArgs& a, std::ostream& out) {
  sampling::SampleSpec spec;
  spec.method = sampling::parse_method(a.method);
  spec.target = a.target;
  spec.forward_burning = a.forward_burning;
  spec.restart = a.restart;
  spec.damping = a.damping;
  spec.seed = g.seed;
  Manifest manifest("sample", g);
  manifest.input(a.in);
  manifest["spec"] = {{"method", a.method},
                      {"target", a.target},
                      {"forward_burning", a.forward_burning},
                      {"restart", a.restart},
                      {"damping", a.damping}};
  auto start = Clock::now();
  LoadedGraph loaded;
  const DirectedGraph source = load_graph(a.in, a.nodes, &loaded);
  manifest.timing("load", seconds_since(start));
  start = Clock::now();
  const auto nodes = sample_set(source, spec);
  const DirectedGraph sub = induced_subgraph(source, nodes);
  manifest.timing("sample", seconds_since(start));

  const fs::path dir = run_dir(g);
  fs::create_directories(dir);
  write_edge_list(dir / "sample_edges.csv", sub);
  manifest.output(dir / "sample_edges.csv");
  std::vector<std::string> ids;
  ids.reserve(nodes.size());
  for (NodeId u : nodes) ids.push_back(loaded.original_ids[u]);
  write_id_mapping(dir / "id_map.csv", ids);
  manifest.output(dir / "id_map.csv");
  manifest.write(dir);
  out << "sampled " << sub.node_count() << " nodes, " << sub.edge_count() << " edges, run "
      << dir.string() << '\n';
  return 0;
}

// ---- compare --------------------------------------------------------------

struct CompareArgs {
  std::vector<std::size_t> sizes{1000};
  std::vector<std::string> methods;
  std::size_t seeds = 10;
  std::optional<std::string> source;
  std::optional<std::size_t> source_nodes;
  std::size_t source_n = 100'000;
  std::optional<std::string> targets;
  std::size_t max_pairs = 1'000'000;
  bool no_generator = false;
};

struct CompareRun {
  std::size_t size;
  std::string method;
  std::uint64_t seed;
  metrics::MetricsReport report;
};

int cmd_compare(const Globals& g, const CompareArgs& a, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config(g);
  const auto targets = load_targets(a.targets);
  std::vector<sampling::Method> methods;
  for (const auto& m : a.methods) methods.push_back(sampling::parse_method(m));
  if (a.seeds < 1) throw InputError("need at least one seed");
  const fs::path dir = run_dir(g);
  Manifest manifest("compare", g);
  manifest["sizes"] = a.sizes;
  manifest["methods"] = a.methods;
  manifest["seeds"] = seed_list(g.seed, a.seeds);
  manifest["config"] = to_json(cfg);

  DirectedGraph source;
  auto start = Clock::now();
  if (!methods.empty()) {
    if (a.source) {
      manifest.input(*a.source);
      source = load_graph(*a.source, a.source_nodes);
    } else {
      manifest["source_n"] = a.source_n;
      source = generate(a.source_n, cfg, g.seed, g.generate_options()).graph;
    }
  }
  manifest.timing("source", seconds_since(start));

  start = Clock::now();
  std::vector<CompareRun> runs;
  const metrics::ReportOptions base_opts{.max_pairs = a.max_pairs, .seed = 0, .workers = g.workers};
  for (std::size_t n : a.sizes) {
    for (std::uint64_t seed : seed_list(g.seed, a.seeds)) {
      auto opts = base_opts;
      opts.seed = seed;
      if (!a.no_generator) {
        const auto net = generate(n, cfg, seed, g.generate_options());
        runs.push_back({n, "generator", seed, metrics::report(net.graph, opts)});
      }
      for (auto method : methods) {
        if (n > source.node_count()) {
          err << "compare: skipping " << sampling::to_string(method) << " at size " << n
              << " (source has " << source.node_count() << " nodes)\n";
          continue;
        }
        sampling::SampleSpec spec;
        spec.method = method;
        spec.target = n;
        spec.seed = seed;
        const auto sub = induced_subgraph(source, sample_set(source, spec));
        runs.push_back({n, sampling::to_string(method), seed, metrics::report(sub, opts)});
      }
    }
  }
  manifest.timing("runs", seconds_since(start));

  std::vector<metrics::MetricValues> pool{targets.values};
  for (const auto& r : runs) {
    if (r.report.complete()) pool.push_back(r.report.values());
  }
  const auto scales = metrics::min_max_scales(pool);

  struct Cell {
    std::vector<double> ned;
    std::size_t failed = 0;
  };
  std::vector<std::pair<std::size_t, std::string>> order;
  std::map<std::pair<std::size_t, std::string>, Cell> cells;
  json records = json::array();
  for (const auto& r : runs) {
    const auto key = std::make_pair(r.size, r.method);
    if (!cells.contains(key)) order.push_back(key);
    auto& cell = cells[key];
    json rec{{"size", r.size}, {"method", r.method}, {"seed", r.seed},
             {"metrics", metrics::to_json(r.report)}};
    if (r.report.complete()) {
      const double d = metrics::ned(r.report.values(), targets.values, scales);
      cell.ned.push_back(d);
      rec["ned"] = d;
    } else {
      ++cell.failed;
      rec["ned"] = nullptr;
    }
    records.push_back(rec);
  }

  std::ostringstream table;
  table << "size\tmethod\truns\tned_mean\tned_std\n";
  json rows = json::array();
  for (const auto& key : order) {
    const auto& cell = cells[key];
    double mean = std::numeric_limits<double>::quiet_NaN();
    double sd = std::numeric_limits<double>::quiet_NaN();
    if (!cell.ned.empty()) {
      mean = 0.0;
      for (double d : cell.ned) mean += d;
      mean /= static_cast<double>(cell.ned.size());
      double ss = 0.0;
      for (double d : cell.ned) ss += (d - mean) * (d - mean);
      sd = cell.ned.size() > 1 ? std::sqrt(ss / static_cast<double>(cell.ned.size() - 1)) : 0.0;
    }
    table << key.first << '\t' << key.second << '\t' << cell.ned.size() << '\t'
          << format_double(mean) << '\t' << format_double(sd) << '\n';
    rows.push_back({{"size", key.first},
                    {"method", key.second},
                    {"runs", cell.ned.size()},
                    {"failed", cell.failed},
                    {"ned_mean", std::isfinite(mean) ? json(mean) : json(nullptr)},
                    {"ned_std", std::isfinite(sd) ? json(sd) : json(nullptr)}});
  }

  fs::create_directories(dir);
  {
    auto f = open_out(dir / "compare.tsv");
    f << table.str();
  }
  manifest.output(dir / "compare.tsv");
  {
    json doc{{"scales", scales}, {"targets", targets.to_json()}, {"rows", rows}, {"runs", records}};
    auto f = open_out(dir / "compare.json");
    f << doc.dump(2) << '\n';
  }
  manifest.output(dir / "compare.json");
  manifest.write(dir);
  out << table.str();
  return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::size_t> sizes{1000};
  std::size_t reps = 1;
};

std::string graph_checksum(const DirectedGraph& g) {
  std::ostringstream s;
  write_edge_list(s, g);
  const std::string text = s.str();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned i = 0; i < 8; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

int cmd_bench(const Globals& g, const BenchArgs& a, std::ostream& out) {
  if (a.reps < 1) throw InputError("need at least one repetition");
  const auto cfg = load_config(g);
  const fs::path dir = run_dir(g);
  Manifest manifest("bench", g);
  manifest["sizes"] = a.sizes;
  manifest["reps"] = a.reps;
  manifest["config"] = to_json(cfg);
  std::ostringstream table;
  table << "n\treps\tmean_s\tstd_s\tedges\tchecksum\n";
  for (std::size_t n : a.sizes) {
    if (n < 2) throw InputError("need at least 2 nodes");
    std::vector<double> times;
    std::size_t edges = 0;
    std::string checksum;
    for (std::size_t r = 0; r < a.reps; ++r) {
      const auto start = Clock::now();
      const auto net = generate(n, cfg, g.seed + r, g.generate_options());
      times.push_back(seconds_since(start));
      if (r == 0) {
        edges = net.graph.edge_count();
        checksum = graph_checksum(net.graph);
      }
    }
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(times.size());
    double ss = 0.0;
    for (double t : times) ss += (t - mean) * (t - mean);
    const double sd = times.size() > 1 ? std::sqrt(ss / static_cast<double>(times.size() - 1)) : 0.0;
    table << n << '\t' << a.reps << '\t' << std::fixed << std::setprecision(3) << mean << '\t' << sd
          << std::defaultfloat << '\t' << edges << '\t' << checksum << '\n';
    manifest.timing("n=" + std::to_string(n), mean);
  }
  fs::create_directories(dir);
  {
    auto f = open_out(dir / "bench.tsv");
    f << table.str();
  }
  manifest.output(dir / "bench.tsv");
  manifest.write(dir);
  out << table.str();
  return 0;
}

}  // namespace

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semantic-homophily synthetic social network generator", "homonet"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "INI file overlaid on the bundled defaults");
  app.add_option("--seed", g.seed, "Root seed for all random streams");
  app.add_option("--workers", g.workers, "Worker threads (0 = all cores)");
  app.add_option("--out", g.out, "Run directory (default runs/<timestamp>_seed<seed>)");
  app.add_option("--max-edges", g.max_edges, "Abort a generation past this many edges (0 = no limit)");
  app.fallthrough();

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate profiles and a follower graph");
  generate_cmd->add_option("--n", gen.n, "Number of nodes")->required();
  generate_cmd->add_flag("--projection", gen.projection, "Also write the projected vectors");

  MetricsArgs met;
  auto* metrics_cmd = app.add_subcommand("metrics", "Measure an edge list");
  metrics_cmd->add_option("--in", met.in, "Edge list CSV")->required();
  metrics_cmd->add_option("--nodes", met.nodes, "Node count; keeps integer ids 0..n-1 as-is");
  metrics_cmd->add_option("--max-pairs", met.max_pairs, "Shortest-path pair budget");

  CalibrateArgs cal;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Grid search over hyperparameters");
  calibrate_cmd->add_option("--n", cal.n, "Nodes per generated graph");
  calibrate_cmd->add_option("--seeds", cal.seeds, "Seeds per configuration");
  calibrate_cmd->add_option("--grid", cal.grid, "INI file with a [grid] section");
  calibrate_cmd->add_option("--targets", cal.targets, "Reference metrics JSON");
  calibrate_cmd->add_flag("--resume", cal.resume, "Continue the sweep in --out");
  calibrate_cmd->add_option("--checkpoint-every", cal.checkpoint_every, "Records per flush");
  calibrate_cmd->add_option("--max-pairs", cal.max_pairs, "Shortest-path pair budget");
  calibrate_cmd->add_option("--top", cal.top, "Rows in the summary table");
  calibrate_cmd->add_flag("--quiet", cal.quiet, "No progress lines");

  SampleArgs smp;
  auto* sample_cmd = app.add_subcommand("sample", "Sample an induced subgraph");
  sample_cmd->add_option("--in", smp.in, "Edge list CSV")->required();
  sample_cmd->add_option("--nodes", smp.nodes, "Node count; keeps integer ids 0..n-1 as-is");
  sample_cmd->add_option("--method", smp.method,
                         "random_node|forest_fire|random_walk|pagerank_node|mhrw");
  sample_cmd->add_option("--target", smp.target, "Nodes in the sample")->required();
  sample_cmd->add_option("--forward-burning", smp.forward_burning);
  sample_cmd->add_option("--restart", smp.restart);
  sample_cmd->add_option("--damping", smp.damping);

  CompareArgs cmp;
  auto* compare_cmd = app.add_subcommand("compare", "NED of generator and samplers per size");
  compare_cmd->add_option("--sizes", cmp.sizes, "Graph sizes")->delimiter(',');
  compare_cmd->add_option("--methods", cmp.methods, "Samplers to compare")->delimiter(',');
  compare_cmd->add_option("--seeds", cmp.seeds, "Seeds per size");
  compare_cmd->add_option("--source", cmp.source, "Source edge list for the samplers");
  compare_cmd->add_option("--source-nodes", cmp.source_nodes, "Node count of --source");
  compare_cmd->add_option("--source-n", cmp.source_n, "Synthetic source size without --source");
  compare_cmd->add_option("--targets", cmp.targets, "Reference metrics JSON");
  compare_cmd->add_option("--max-pairs", cmp.max_pairs, "Shortest-path pair budget");
  compare_cmd->add_flag("--no-generator", cmp.no_generator, "Only run the samplers");

  BenchArgs bch;
  auto* bench_cmd = app.add_subcommand("bench", "Time generation per size");
  bench_cmd->add_option("--sizes", bch.sizes, "Graph sizes")->delimiter(',');
  bench_cmd->add_option("--reps", bch.reps, "Repetitions per size");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*generate_cmd) return cmd_generate(g, gen, out);
    if (*metrics_cmd) return cmd_metrics(g, met, out, err);
    if (*calibrate_cmd) return cmd_calibrate(g, cal, out, err);
    if (*sample_cmd) return cmd_sample(g, smp, out);
    if (*compare_cmd) return cmd_compare(g, cmp, out, err);
    if (*bench_cmd) return cmd_bench(g, bch, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace homonet::cli
