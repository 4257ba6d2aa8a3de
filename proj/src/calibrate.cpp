#include "homonet/calibrate.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "homonet/error.hpp"
#include "homonet/parallel.hpp"

namespace homonet::calibrate {

namespace {

struct Axis {
  const char* key;
  std::vector<double> GridSpec::*values;
  double linkgen::RawHyperParams::*field;
};

const Axis kAxes[] = {
    {"CONN_EXP_WEIGHT", &GridSpec::alpha, &linkgen::RawHyperParams::alpha},
    {"CONN_RAND_WEIGHT", &GridSpec::beta, &linkgen::RawHyperParams::beta},
    {"TRIADIC_PROB_BASE", &GridSpec::delta_base, &linkgen::RawHyperParams::delta_base},
    {"TRIADIC_PROB_SCALE", &GridSpec::delta_scale, &linkgen::RawHyperParams::delta_scale},
    {"TRIADIC_PROB_CAP", &GridSpec::delta_cap, &linkgen::RawHyperParams::delta_cap},
    {"Y_DISTANT_PROB_BASE", &GridSpec::eta_base, &linkgen::RawHyperParams::eta_base},
    {"Y_DISTANT_PROB_SCALE", &GridSpec::eta_scale, &linkgen::RawHyperParams::eta_scale},
    {"NUM_CANDIDATES_SCALE", &GridSpec::candidates_scale,
     &linkgen::RawHyperParams::candidates_scale},
};

nlohmann::json config_json(const linkgen::RawHyperParams& c) {
  nlohmann::json j;
  for (const auto& axis : kAxes) j[axis.key] = c.*axis.field;
  return j;
}

nlohmann::json record_json(const GridResult& r) {
  nlohmann::json j;
  j["index"] = r.index;
  j["config"] = config_json(r.config);
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& rep : r.reports) reports.push_back(metrics::to_json(rep));
  j["reports"] = reports;
  nlohmann::json mean;
  for (std::size_t m = 0; m < metrics::kMetricCount; ++m) {
    mean[std::string(metrics::kMetricNames[m])] =
        std::isfinite(r.mean[m]) ? nlohmann::json(r.mean[m]) : nlohmann::json(nullptr);
  }
  j["mean"] = mean;
  j["error"] = r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr);
  return j;
}

GridResult record_from_json(const nlohmann::json& j,
                            const std::vector<linkgen::RawHyperParams>& configs) {
  GridResult r;
  r.index = j.at("index").get<std::size_t>();
  if (r.index >= configs.size()) throw LoadError("checkpoint record index out of range");
  r.config = configs[r.index];
  for (const auto& rep : j.at("reports")) r.reports.push_back(metrics::report_from_json(rep));
  if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
  for (std::size_t m = 0; m < metrics::kMetricCount; ++m) {
    const auto& v = j.at("mean").at(std::string(metrics::kMetricNames[m]));
    r.mean[m] = v.is_null() ? metrics::kUndefined : v.get<double>();
  }
  return r;
}

nlohmann::json sweep_header(const GridSpec& grid, const GeneratorConfig& base, std::size_t n,
                            const std::vector<std::uint64_t>& seeds,
                            const metrics::ReferenceTargets& targets, std::size_t max_pairs) {
  nlohmann::json h;
  h["n"] = n;
  h["seeds"] = seeds;
  h["grid"] = grid.to_json();
  h["base"] = to_json(base);
  h["targets"] = targets.to_json();
  h["max_pairs"] = max_pairs;
  return nlohmann::json{{"sweep", h}};
}

struct Checkpoint {
  std::vector<GridResult> records;
};

// Reads complete records; a torn final line from an interrupted write is cut
// off so appends continue from a clean boundary.
Checkpoint read_checkpoint(const std::filesystem::path& path, const nlohmann::json& header,
                           const std::vector<linkgen::RawHyperParams>& configs) {
  Checkpoint cp;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open checkpoint " + path.string());
  std::string line;
  std::uintmax_t good_bytes = 0;
  bool first = true;
  while (std::getline(in, line)) {
    if (in.eof()) break;  // no trailing newline: torn write
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      break;
    }
    if (first) {
      if (j != header) {
        throw LoadError("checkpoint " + path.string() + " belongs to a different sweep");
      }
      first = false;
    } else {
      GridResult r = record_from_json(j, configs);
      if (r.index != cp.records.size()) throw LoadError("checkpoint records out of order");
      cp.records.push_back(std::move(r));
    }
    good_bytes += line.size() + 1;
  }
  in.close();
  if (first) throw LoadError("checkpoint " + path.string() + " has no header");
  std::filesystem::resize_file(path, good_bytes);
  return cp;
}

}  // namespace

void GridSpec::validate() const {
  for (const auto& axis : kAxes) {
    const auto& values = this->*axis.values;
    if (values.empty()) throw ConfigError(std::string("grid list ") + axis.key + " is empty");
    for (double v : values) {
      if (!std::isfinite(v) || v < 0.0) {
        throw ConfigError(std::string("grid list ") + axis.key + " holds an invalid value");
      }
    }
  }
}

std::size_t GridSpec::size() const {
  std::size_t total = 1;
  for (const auto& axis : kAxes) total *= (this->*axis.values).size();
  return total;
}

GridSpec GridSpec::load(const std::filesystem::path& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw LoadError(e.what());
  }
  GridSpec grid;
  const auto sec = tree.find("grid");
  if (sec == tree.not_found()) throw ConfigError("grid file lacks a [grid] section");
  for (const auto& [key, value] : sec->second) {
    const Axis* axis = nullptr;
    for (const auto& a : kAxes) {
      if (key == a.key) axis = &a;
    }
    if (axis == nullptr) throw ConfigError("unknown grid key '" + key + "'");
    std::vector<double> values;
    std::stringstream in(value.data());
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(item, &used));
      } catch (const std::exception&) {
        throw ConfigError("grid key '" + key + "': bad number '" + item + "'");
      }
    }
    grid.*(axis->values) = values;
  }
  grid.validate();
  return grid;
}

nlohmann::json GridSpec::to_json() const {
  nlohmann::json j;
  for (const auto& axis : kAxes) j[axis.key] = this->*axis.values;
  return j;
}

std::vector<linkgen::RawHyperParams> enumerate(const GridSpec& grid,
                                               const linkgen::RawHyperParams& base) {
  grid.validate();
  std::vector<linkgen::RawHyperParams> out;
  out.reserve(grid.size());
  constexpr std::size_t kAxisCount = std::size(kAxes);
  std::array<std::size_t, kAxisCount> digit{};
  for (;;) {
    linkgen::RawHyperParams c = base;
    for (std::size_t a = 0; a < kAxisCount; ++a) c.*(kAxes[a].field) = (grid.*(kAxes[a].values))[digit[a]];
    out.push_back(c);
    // Odometer increment, last axis fastest.
    std::size_t a = kAxisCount;
    while (a > 0) {
      --a;
      if (++digit[a] < (grid.*(kAxes[a].values)).size()) break;
      digit[a] = 0;
      if (a == 0) return out;
    }
  }
}

GridResult evaluate(const linkgen::RawHyperParams& config, const GeneratorConfig& base,
                    std::size_t n, const std::vector<std::uint64_t>& seeds,
                    const metrics::ReferenceTargets& targets,
                    const metrics::MetricValues& pool_scales, const EvaluateOptions& options) {
  if (n < 2) throw InputError("need at least 2 nodes");
  if (seeds.empty()) throw InputError("need at least one seed");
  GridResult result;
  result.config = config;
  try {
    GeneratorConfig cfg = base;
    cfg.link = config;
    cfg.link.validate();
    std::vector<metrics::MetricValues> values;
    for (std::uint64_t seed : seeds) {
      const auto net = generate(
          n, cfg, seed, {.workers = options.workers, .max_edges = options.max_edges});
      result.reports.push_back(metrics::report(
          net.graph, {.max_pairs = options.max_pairs, .seed = seed, .workers = options.workers}));
      if (!result.reports.back().complete()) {
        throw Error("seed " + std::to_string(seed) + " produced an undefined metric");
      }
      values.push_back(result.reports.back().values());
    }
    result.mean = metrics::mean_values(values);
    result.ned = metrics::ned(result.mean, targets.values, pool_scales);
  } catch (const Error& e) {
    result.error = e.what();
    result.mean.fill(metrics::kUndefined);
    result.ned = std::numeric_limits<double>::infinity();
  }
  return result;
}

SearchOutcome rank(std::vector<GridResult> results, const metrics::ReferenceTargets& targets) {
  SearchOutcome outcome;
  std::vector<metrics::MetricValues> pool;
  for (const auto& r : results) {
    if (!r.failed()) pool.push_back(r.mean);
  }
  pool.push_back(targets.values);
  outcome.pool_scales = metrics::min_max_scales(pool);
  for (auto& r : results) {
    r.ned = r.failed() ? std::numeric_limits<double>::infinity()
                       : metrics::ned(r.mean, targets.values, outcome.pool_scales);
  }
  std::sort(results.begin(), results.end(), [](const GridResult& a, const GridResult& b) {
    return a.ned < b.ned || (a.ned == b.ned && a.index < b.index);
  });
  for (std::size_t i = 0; i < results.size(); ++i) results[i].rank = i + 1;
  outcome.ranked = std::move(results);
  return outcome;
}

SearchOutcome search(const GridSpec& grid, const GeneratorConfig& base, std::size_t n,
                     const std::vector<std::uint64_t>& seeds,
                     const metrics::ReferenceTargets& targets, const SearchOptions& options) {
  if (n < 2) throw InputError("need at least 2 nodes");
  if (seeds.empty()) throw InputError("need at least one seed");
  const auto configs = enumerate(grid, base.link);
  const auto header = sweep_header(grid, base, n, seeds, targets, options.max_pairs);

  std::vector<GridResult> results;
  std::ofstream sink;
  if (options.checkpoint) {
    if (options.resume && std::filesystem::exists(*options.checkpoint)) {
      results = read_checkpoint(*options.checkpoint, header, configs).records;
      sink.open(*options.checkpoint, std::ios::binary | std::ios::app);
    } else {
      sink.open(*options.checkpoint, std::ios::binary | std::ios::trunc);
      sink << header.dump() << '\n';
    }
    if (!sink) throw LoadError("cannot write checkpoint " + options.checkpoint->string());
    sink.flush();
  }

  SearchOutcome outcome;
  const metrics::MetricValues no_scales{};
  const std::size_t step = std::max<std::size_t>(1, options.checkpoint_every);
  for (std::size_t start = results.size(); start < configs.size(); start += step) {
    const std::size_t stop = std::min(configs.size(), start + step);
    std::vector<GridResult> batch(stop - start);
    parallel_for(options.workers, start, stop, [&](std::size_t i) {
      batch[i - start] = evaluate(configs[i], base, n, seeds, targets, no_scales,
                                  {.max_pairs = options.max_pairs, .workers = 1, .max_edges = options.max_edges});
      batch[i - start].index = i;
    });
    for (auto& r : batch) {
      if (sink.is_open()) sink << record_json(r).dump() << '\n';
      results.push_back(std::move(r));
    }
    if (sink.is_open()) sink.flush();
    outcome.evaluated_now += stop - start;
    if (options.progress) options.progress(stop, configs.size());
  }

  // Rank from the serialized form so a resumed sweep and an uninterrupted one
  // see bit-identical inputs.
  for (auto& r : results) r = record_from_json(record_json(r), configs);
  const std::size_t fresh = outcome.evaluated_now;
  outcome = rank(std::move(results), targets);
  outcome.evaluated_now = fresh;
  return outcome;
}

void write_ranking(std::ostream& out, const SearchOutcome& outcome) {
  for (const auto& r : outcome.ranked) {
    nlohmann::json j = record_json(r);
    j["ned"] = std::isfinite(r.ned) ? nlohmann::json(r.ned) : nlohmann::json("inf");
    j["rank"] = r.rank;
    out << j.dump() << '\n';
  }
}

void write_summary(std::ostream& out, const SearchOutcome& outcome, std::size_t top) {
  out << "rank\teta0\tkappa\tdelta0\tlambda\tdelta_cap\tzeta\talpha\tbeta\tNED\n";
  const std::size_t rows = std::min(top, outcome.ranked.size());
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& r = outcome.ranked[i];
    const auto& c = r.config;
    std::ostringstream line;
    line << r.rank << '\t' << c.eta_base << '\t' << c.eta_scale << '\t' << c.delta_base << '\t'
         << c.delta_scale << '\t' << c.delta_cap << '\t' << c.candidates_scale << '\t' << c.alpha
         << '\t' << c.beta << '\t';
    if (std::isfinite(r.ned)) {
      line << std::fixed << std::setprecision(3) << r.ned;
    } else {
      line << "inf";
    }
    out << line.str() << '\n';
  }
}

}  // namespace homonet::calibrate
