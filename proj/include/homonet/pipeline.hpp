#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "homonet/attrgen.hpp"
#include "homonet/graph.hpp"
#include "homonet/linkgen.hpp"
#include "homonet/semspace.hpp"

#include "json.hpp"

namespace homonet {

/// Everything needed to generate a network: attribute models, semantic
/// orderings, projection weights and link hyperparameters.
struct GeneratorConfig {
  attrgen::ProfileConfig profiles;
  semspace::SemanticMap occupation_map;
  semspace::SemanticMap interest_map;
  std::vector<double> weights;  // empty = all ones
  linkgen::RawHyperParams link;

  /// Validates the attribute models and that every occupation and interest
  /// label is present in its semantic ordering.
  void validate() const;
};

/// Data directory: $HOMONET_DATA_DIR if set, else the bundled data directory.
std::filesystem::path default_data_dir();

/// Loads `<data_dir>/default.cfg` and overlays `config_file` when given.
/// Sections: [age] [traits] [occupations] [interests] [influence] [gender]
/// [projection] [hyperparameters] [data]. Throws ConfigError/LoadError.
GeneratorConfig load_generator_config(const std::filesystem::path& data_dir,
                                      const std::optional<std::filesystem::path>& config_file = {});

/// Parses only the [hyperparameters] section of a file on top of `base`.
linkgen::RawHyperParams load_hyperparameters(const std::filesystem::path& path,
                                             linkgen::RawHyperParams base = {});

nlohmann::json to_json(const linkgen::RawHyperParams& raw);
nlohmann::json to_json(const GeneratorConfig& config);

struct GeneratedNetwork {
  std::vector<attrgen::NodeProfile> profiles;
  semspace::ProjectionMatrix projection;
  DirectedGraph graph;
  linkgen::ResolvedHyperParams params;
  double profile_seconds = 0.0;
  double projection_seconds = 0.0;
  double link_seconds = 0.0;
};

/// attributes -> projection -> links, all streams derived from `seed`.
GeneratedNetwork generate(std::size_t n, const GeneratorConfig& config, std::uint64_t seed,
                          unsigned workers = 1);
GeneratedNetwork generate(std::size_t n, const GeneratorConfig& config, std::uint64_t seed,
                          const linkgen::GenerateOptions& options);

/// One JSON object per line: id, name, gender, age, occupation, interests,
/// traits ("Name+" / "Name-"), influence.
void write_profiles(std::ostream& out, const std::vector<attrgen::NodeProfile>& profiles);

}  // namespace homonet
