#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "cli.hpp"
#include "json.hpp"

#include "homonet/error.hpp"
#include "homonet/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = homonet::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "homonet_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST_CASE("generate: artifacts, checksums, determinism, precondition") {
  const auto a = fresh_dir("gen_a");
  const auto b = fresh_dir("gen_b");
  auto r = call({"generate", "--n", "300", "--seed", "7", "--out", a.string(), "--workers", "1"});
  REQUIRE(r.status == 0);
  r = call({"--workers", "4", "generate", "--n", "300", "--seed", "7", "--out", b.string()});
  REQUIRE(r.status == 0);
  for (const char* f : {"profiles.jsonl", "edges.csv"}) {
    CHECK(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const auto m = manifest(a);
  CHECK(m["subcommand"] == "generate");
  CHECK(m["seed"] == 7);
  for (const auto& [name, sum] : m["outputs"].items()) {
    CHECK(sum == homonet::cli::sha256_file((a / name).string()));
  }
  CHECK(m["outputs"] == manifest(b)["outputs"]);
  for (const auto& [phase, t] : m["timings"].items()) CHECK(t.get<double>() >= 0.0);

  const auto bad = call({"generate", "--n", "1", "--out", fresh_dir("gen_bad").string()});
  CHECK(bad.status != 0);
  CHECK(bad.err.find("need at least 2 nodes") != std::string::npos);
}

TEST_CASE("metrics: triangle, empty graph, recorded pair budget") {
  const auto dir = fresh_dir("metrics");
  fs::create_directories(dir);
  const auto tri = dir / "tri.csv";
  std::ofstream(tri) << "src,dst\n0,1\n1,2\n2,0\n1,0\n2,1\n0,2\n";
  auto r = call({"metrics", "--in", tri.string(), "--max-pairs", "100", "--out", (dir / "t").string()});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["density"] == 1.0);
  CHECK(j["avg_clustering"] == 1.0);
  CHECK(manifest(dir / "t")["max_pairs"] == 100);

  const auto empty = dir / "empty.csv";
  std::ofstream(empty) << "src,dst\n";
  r = call({"metrics", "--in", empty.string(), "--nodes", "4", "--out", (dir / "e").string()});
  CHECK(r.status != 0);
  CHECK(nlohmann::json::parse(r.out)["norm_shortest_path"].is_null());

  r = call({"metrics", "--in", (dir / "missing.csv").string(), "--out", (dir / "m").string()});
  CHECK(r.status != 0);
  CHECK(r.err.rfind("error:", 0) == 0);
}

TEST_CASE("unknown config key is rejected") {
  const auto dir = fresh_dir("cfg");
  fs::create_directories(dir);
  const auto cfg = dir / "bad.cfg";
  std::ofstream(cfg) << "[hyperparameters]\nCONN_EXP_WIEGHT = 0.2\n";
  CHECK_THROWS_AS(homonet::load_generator_config(homonet::default_data_dir(), cfg), homonet::ConfigError);
  const auto r = call({"--config", cfg.string(), "generate", "--n", "10", "--out", (dir / "o").string()});
  CHECK(r.status != 0);
}

TEST_CASE("calibrate: 2x2 smoke and resume") {
  const auto dir = fresh_dir("cal");
  fs::create_directories(dir);
  const auto grid = dir / "grid.ini";
  std::ofstream(grid) << "[grid]\nCONN_EXP_WEIGHT = 0.0, 0.16\nCONN_RAND_WEIGHT = 0.06\n"
                         "TRIADIC_PROB_BASE = 0.2\nTRIADIC_PROB_SCALE = 3.5\nTRIADIC_PROB_CAP = 0.42\n"
                         "Y_DISTANT_PROB_BASE = 0.0, 0.05\nY_DISTANT_PROB_SCALE = 0.1\n"
                         "NUM_CANDIDATES_SCALE = 36\n";
  const std::vector<std::string> base{"calibrate", "--n", "150", "--seeds", "1", "--grid",
                                      grid.string(), "--max-pairs", "2000", "--quiet",
                                      "--checkpoint-every", "1"};
  auto args = base;
  args.insert(args.end(), {"--out", (dir / "a").string()});
  REQUIRE(call(args).status == 0);
  const std::string ranking = slurp(dir / "a" / "ranking.jsonl");
  std::istringstream lines(ranking);
  int count = 0;
  for (std::string line; std::getline(lines, line);) ++count;
  CHECK(count == 4);

  std::istringstream summary(slurp(dir / "a" / "summary.tsv"));
  std::string header;
  std::getline(summary, header);
  CHECK(header == "rank\teta0\tkappa\tdelta0\tlambda\tdelta_cap\tzeta\talpha\tbeta\tNED");

  // Keep the header and two records, then resume.
  fs::create_directories(dir / "b");
  std::istringstream sweep(slurp(dir / "a" / "sweep.jsonl"));
  std::ofstream partial(dir / "b" / "sweep.jsonl", std::ios::binary);
  std::string line;
  for (int i = 0; i < 3 && std::getline(sweep, line); ++i) partial << line << '\n';
  partial.close();
  args = base;
  args.insert(args.end(), {"--out", (dir / "b").string(), "--resume"});
  REQUIRE(call(args).status == 0);
  CHECK(slurp(dir / "b" / "ranking.jsonl") == ranking);
  CHECK(slurp(dir / "b" / "sweep.jsonl") == slurp(dir / "a" / "sweep.jsonl"));
}

TEST_CASE("sample, compare and bench smoke") {
  const auto dir = fresh_dir("misc");
  REQUIRE(call({"generate", "--n", "400", "--seed", "3", "--out", (dir / "g").string()}).status == 0);
  auto r = call({"sample", "--in", (dir / "g" / "edges.csv").string(), "--nodes", "400", "--method",
                 "forest_fire", "--target", "50", "--out", (dir / "s").string()});
  REQUIRE(r.status == 0);
  CHECK(fs::exists(dir / "s" / "sample_edges.csv"));
  std::istringstream ids(slurp(dir / "s" / "id_map.csv"));
  int rows = 0;
  for (std::string line; std::getline(ids, line);) ++rows;
  CHECK(rows == 51);
  r = call({"sample", "--in", (dir / "g" / "edges.csv").string(), "--method", "mhrw", "--target",
            "100000", "--out", (dir / "s2").string()});
  CHECK(r.status != 0);

  r = call({"compare", "--sizes", "100", "--methods", "random_node,mhrw", "--seeds", "1",
            "--source", (dir / "g" / "edges.csv").string(), "--source-nodes", "400",
            "--no-generator", "--max-pairs", "5000", "--out", (dir / "c").string()});
  REQUIRE(r.status == 0);
  std::istringstream table(slurp(dir / "c" / "compare.tsv"));
  std::vector<std::string> lines;
  for (std::string line; std::getline(table, line);) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "size\tmethod\truns\tned_mean\tned_std");

  r = call({"bench", "--sizes", "200", "--reps", "1", "--out", (dir / "b").string()});
  REQUIRE(r.status == 0);
  std::istringstream bench(slurp(dir / "b" / "bench.tsv"));
  lines.clear();
  for (std::string line; std::getline(bench, line);) lines.push_back(line);
  CHECK(lines.size() == 2);
  CHECK(lines[1].rfind("200\t1\t", 0) == 0);
}
