#include "homonet/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "homonet/error.hpp"

#ifndef HOMONET_BUNDLED_DATA_DIR
#define HOMONET_BUNDLED_DATA_DIR "data"
#endif

namespace homonet {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
}

int parse_int(const std::string& text, const std::string& key) {
  const double v = parse_double(text, key);
  if (v != static_cast<int>(v)) throw ConfigError("key '" + key + "': expected an integer");
  return static_cast<int>(v);
}

std::vector<double> parse_doubles(const std::string& text, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(item, key));
  return out;
}

attrgen::AgeInterval parse_interval(const std::string& text) {
  const auto dash = text.find('-');
  if (dash == std::string::npos) throw ConfigError("age interval '" + text + "' must be lo-hi");
  return {parse_int(trim(text.substr(0, dash)), text), parse_int(trim(text.substr(dash + 1)), text)};
}

pt::ptree read_ini(const std::filesystem::path& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw LoadError(e.what());
  }
  return tree;
}

// Later trees override earlier ones key by key within each section.
void overlay(pt::ptree& base, const pt::ptree& top) {
  for (const auto& [name, keys] : top) {
    auto sec = base.find(name);
    if (sec == base.not_found()) {
      base.push_back({name, keys});
      continue;
    }
    for (const auto& [key, v] : keys) {
      auto entry = sec->second.find(key);
      if (entry == sec->second.not_found()) {
        sec->second.push_back({key, v});
      } else {
        entry->second = v;
      }
    }
  }
}

const pt::ptree* section(const pt::ptree& tree, const std::string& name) {
  const auto it = tree.find(name);
  return it == tree.not_found() ? nullptr : &it->second;
}

std::optional<std::string> value(const pt::ptree* sec, const std::string& key) {
  if (sec == nullptr) return std::nullopt;
  const auto it = sec->find(key);
  if (it == sec->not_found()) return std::nullopt;
  return trim(it->second.data());
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

void apply_hyperparameters(const pt::ptree* sec, linkgen::RawHyperParams& raw) {
  if (sec == nullptr) return;
  struct Binding {
    const char* key;
    double* field;
  };
  const Binding bindings[] = {
      {"CONN_EXP_WEIGHT", &raw.alpha},
      {"CONN_RAND_WEIGHT", &raw.beta},
      {"TRIADIC_PROB_BASE", &raw.delta_base},
      {"TRIADIC_PROB_SCALE", &raw.delta_scale},
      {"TRIADIC_PROB_CAP", &raw.delta_cap},
      {"Y_DISTANT_PROB_BASE", &raw.eta_base},
      {"Y_DISTANT_PROB_SCALE", &raw.eta_scale},
      {"NUM_CANDIDATES_SCALE", &raw.candidates_scale},
      {"mu", &raw.delta_exponent},
      {"theta", &raw.candidates_exponent},
      {"gamma", &raw.gamma},
      {"k_max", &raw.k_max},
      {"temperature", &raw.temperature},
  };
  for (const auto& [key, text] : *sec) {
    bool known = false;
    for (const auto& b : bindings) {
      if (key == b.key) {
        *b.field = parse_double(trim(text.data()), key);
        known = true;
      }
    }
    if (key == "Y_DISTANT_PROB_CAP") {
      const std::string v = trim(text.data());
      if (v.empty() || v == "auto") {
        raw.eta_cap.reset();
      } else {
        raw.eta_cap = parse_double(v, key);
      }
      known = true;
    } else if (key == "logit_form") {
      raw.logit_form = linkgen::parse_logit_form(trim(text.data()));
      known = true;
    }
    if (!known) throw ConfigError("unknown hyperparameter key '" + key + "'");
  }
}

GeneratorConfig interpret(const pt::ptree& tree, const std::filesystem::path& data_dir) {
  GeneratorConfig cfg;
  auto& profiles = cfg.profiles;

  const auto* data = section(tree, "data");
  auto data_file = [&](const std::string& key, const std::string& fallback) {
    return data_dir / value(data, key).value_or(fallback);
  };
  cfg.occupation_map = semspace::load_semantic_map(data_file("occupation_order", "occupations.txt"));
  cfg.interest_map = semspace::load_semantic_map(data_file("interest_order", "interests.txt"));
  profiles.names.female = read_lines(data_file("names_female", "names_female.txt"));
  profiles.names.male = read_lines(data_file("names_male", "names_male.txt"));

  const auto* age = section(tree, "age");
  if (auto v = value(age, "intervals")) {
    const auto items = split_list(*v);
    if (items.size() != attrgen::kAgeIntervals) throw ConfigError("[age] needs exactly 7 intervals");
    for (std::size_t i = 0; i < items.size(); ++i) profiles.age.intervals[i] = parse_interval(items[i]);
  }
  if (auto v = value(age, "probs")) {
    const auto probs = parse_doubles(*v, "probs");
    if (probs.size() != attrgen::kAgeIntervals) throw ConfigError("[age] needs exactly 7 probs");
    std::copy(probs.begin(), probs.end(), profiles.age.probs.begin());
  }

  const auto* traits = section(tree, "traits");
  if (traits != nullptr) {
    for (const auto& [key, text] : *traits) {
      bool known = false;
      for (std::size_t t = 0; t < attrgen::kTraitCount; ++t) {
        if (key == attrgen::kTraitNames[t]) {
          profiles.traits.positive_prob[t] = parse_double(trim(text.data()), key);
          known = true;
        }
      }
      if (!known) throw ConfigError("unknown trait '" + key + "'");
    }
  }

  const auto* occupations = section(tree, "occupations");
  if (occupations == nullptr) throw ConfigError("missing [occupations] section");
  for (const auto& iv : profiles.age.intervals) {
    const std::string key = std::to_string(iv.lo) + "-" + std::to_string(iv.hi);
    auto v = value(occupations, key);
    if (!v) throw ConfigError("[occupations] lacks a pool for ages " + key);
    profiles.occupations.pools.push_back({iv, split_list(*v)});
  }
  for (const auto& [key, text] : *occupations) {
    const auto iv = parse_interval(key);
    if (!profiles.age.interval_of(iv.lo) ||
        !(profiles.age.intervals[*profiles.age.interval_of(iv.lo)] == iv)) {
      throw ConfigError("[occupations] pool '" + key + "' matches no age interval");
    }
  }

  const auto* interests = section(tree, "interests");
  if (auto v = value(interests, "labels")) {
    profiles.interests.labels = split_list(*v);
  } else {
    profiles.interests.labels = cfg.interest_map.labels();
  }
  if (auto v = value(interests, "max_interests")) {
    profiles.interests.max_interests = parse_int(*v, "max_interests");
  }

  const auto* influence = section(tree, "influence");
  auto& inf = profiles.influence;
  if (auto v = value(influence, "a")) inf.exponent = parse_double(*v, "a");
  if (auto v = value(influence, "x_min")) inf.x_min = parse_double(*v, "x_min");
  if (auto v = value(influence, "max_score")) inf.max_score = parse_double(*v, "max_score");
  if (auto v = value(influence, "boost_prob")) inf.boost_prob = parse_double(*v, "boost_prob");
  if (auto v = value(influence, "boost_quantile")) {
    inf.boost_quantile = parse_double(*v, "boost_quantile");
  }
  if (auto v = value(influence, "young_band")) {
    const auto band = parse_interval(*v);
    inf.young_lo = band.lo;
    inf.young_hi = band.hi;
  }
  if (auto v = value(influence, "young_multiplier")) {
    inf.young_multiplier = parse_double(*v, "young_multiplier");
  }
  if (auto v = value(influence, "old_from")) inf.old_from = parse_int(*v, "old_from");
  if (auto v = value(influence, "old_multiplier")) {
    inf.old_multiplier = parse_double(*v, "old_multiplier");
  }

  if (auto v = value(section(tree, "gender"), "female_prob")) {
    profiles.female_prob = parse_double(*v, "female_prob");
  }
  if (auto v = value(section(tree, "projection"), "weights")) {
    cfg.weights = parse_doubles(*v, "weights");
  }
  apply_hyperparameters(section(tree, "hyperparameters"), cfg.link);
  cfg.validate();
  return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void GeneratorConfig::validate() const {
  profiles.validate();
  link.validate();
  for (const auto& pool : profiles.occupations.pools) {
    for (const auto& label : pool.labels) {
      if (!occupation_map.contains(label)) {
        throw ConfigError("occupation '" + label + "' is not in the occupation ordering");
      }
    }
  }
  for (const auto& label : profiles.interests.labels) {
    if (!interest_map.contains(label)) {
      throw ConfigError("interest '" + label + "' is not in the interest ordering");
    }
  }
  if (!weights.empty() &&
      weights.size() != static_cast<std::size_t>(profiles.interests.max_interests) + 3) {
    throw ConfigError("[projection] weights must have max_interests + 3 entries");
  }
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("HOMONET_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return HOMONET_BUNDLED_DATA_DIR;
}

GeneratorConfig load_generator_config(const std::filesystem::path& data_dir,
                                      const std::optional<std::filesystem::path>& config_file) {
  pt::ptree tree = read_ini(data_dir / "default.cfg");
  if (config_file) overlay(tree, read_ini(*config_file));
  return interpret(tree, data_dir);
}

linkgen::RawHyperParams load_hyperparameters(const std::filesystem::path& path,
                                             linkgen::RawHyperParams base) {
  const pt::ptree tree = read_ini(path);
  apply_hyperparameters(section(tree, "hyperparameters"), base);
  base.validate();
  return base;
}

nlohmann::json to_json(const linkgen::RawHyperParams& raw) {
  nlohmann::json j;
  j["CONN_EXP_WEIGHT"] = raw.alpha;
  j["CONN_RAND_WEIGHT"] = raw.beta;
  j["TRIADIC_PROB_BASE"] = raw.delta_base;
  j["TRIADIC_PROB_SCALE"] = raw.delta_scale;
  j["TRIADIC_PROB_CAP"] = raw.delta_cap;
  j["Y_DISTANT_PROB_BASE"] = raw.eta_base;
  j["Y_DISTANT_PROB_SCALE"] = raw.eta_scale;
  j["Y_DISTANT_PROB_CAP"] = raw.effective_eta_cap();
  j["NUM_CANDIDATES_SCALE"] = raw.candidates_scale;
  j["mu"] = raw.delta_exponent;
  j["theta"] = raw.candidates_exponent;
  j["gamma"] = raw.gamma;
  j["k_max"] = raw.k_max;
  j["temperature"] = raw.temperature;
  j["logit_form"] = linkgen::to_string(raw.logit_form);
  return j;
}

nlohmann::json to_json(const GeneratorConfig& config) {
  const auto& p = config.profiles;
  nlohmann::json j;
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& iv : p.age.intervals) {
    intervals.push_back(std::to_string(iv.lo) + "-" + std::to_string(iv.hi));
  }
  j["age"] = {{"intervals", intervals}, {"probs", p.age.probs}};
  nlohmann::json traits;
  for (std::size_t t = 0; t < attrgen::kTraitCount; ++t) {
    traits[std::string(attrgen::kTraitNames[t])] = p.traits.positive_prob[t];
  }
  j["traits"] = traits;
  nlohmann::json pools;
  for (const auto& pool : p.occupations.pools) {
    pools[std::to_string(pool.interval.lo) + "-" + std::to_string(pool.interval.hi)] = pool.labels;
  }
  j["occupations"] = pools;
  j["interests"] = {{"labels", p.interests.labels}, {"max_interests", p.interests.max_interests}};
  const auto& inf = p.influence;
  j["influence"] = {{"a", inf.exponent},
                    {"x_min", inf.x_min},
                    {"max_score", inf.max_score},
                    {"boost_prob", inf.boost_prob},
                    {"boost_quantile", inf.boost_quantile},
                    {"young_band", std::to_string(inf.young_lo) + "-" + std::to_string(inf.young_hi)},
                    {"young_multiplier", inf.young_multiplier},
                    {"old_from", inf.old_from},
                    {"old_multiplier", inf.old_multiplier}};
  j["gender"] = {{"female_prob", p.female_prob}};
  j["projection"] = {{"weights", config.weights}};
  j["hyperparameters"] = to_json(config.link);
  j["orderings"] = {{"occupations", config.occupation_map.labels()},
                    {"interests", config.interest_map.labels()}};
  return j;
}

GeneratedNetwork generate(std::size_t n, const GeneratorConfig& config, std::uint64_t seed,
                          unsigned workers) {
  return generate(n, config, seed, linkgen::GenerateOptions{.workers = workers});
}

GeneratedNetwork generate(std::size_t n, const GeneratorConfig& config, std::uint64_t seed,
                          const linkgen::GenerateOptions& options) {
  const unsigned workers = options.workers;
  if (n < 2) throw InputError("need at least 2 nodes");
  GeneratedNetwork out;
  auto start = std::chrono::steady_clock::now();
  out.profiles = attrgen::generate_profiles(n, config.profiles, seed, workers);
  out.profile_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  // Configured weights cover max_interests slots; a cohort whose largest
  // interest list is shorter drops the unused slot weights.
  std::vector<double> weights = config.weights;
  if (!weights.empty()) {
    std::size_t slots = 0;
    for (const auto& p : out.profiles) slots = std::max(slots, p.interests.size());
    if (slots + 3 < weights.size()) {
      const double random_weight = weights.back();
      weights.resize(slots + 2);
      weights.push_back(random_weight);
    }
  }
  out.projection = semspace::project_profiles(out.profiles, config.occupation_map,
                                              config.interest_map, weights, seed, workers);
  out.projection_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  std::vector<double> influence(n);
  for (std::size_t i = 0; i < n; ++i) influence[i] = out.profiles[i].influence;
  out.params = linkgen::resolve(config.link, n);
  out.graph = linkgen::generate_network(influence, config.profiles.influence.max_score,
                                        out.projection, config.link, seed, options);
  out.link_seconds = seconds_since(start);
  return out;
}

void write_profiles(std::ostream& out, const std::vector<attrgen::NodeProfile>& profiles) {
  for (const auto& p : profiles) {
    nlohmann::json j;
    j["id"] = p.id;
    j["name"] = p.name;
    j["gender"] = attrgen::to_string(p.gender);
    j["age"] = p.age;
    j["occupation"] = p.occupation;
    j["interests"] = p.interests;
    nlohmann::json traits = nlohmann::json::array();
    for (std::size_t t = 0; t < attrgen::kTraitCount; ++t) {
      traits.push_back(std::string(attrgen::kTraitNames[t]) + (p.traits[t] ? "+" : "-"));
    }
    j["traits"] = traits;
    j["influence"] = p.influence;
    out << j.dump() << '\n';
  }
}

}  // namespace homonet
