#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "homonet/linkgen.hpp"
#include "homonet/netmetrics.hpp"
#include "homonet/pipeline.hpp"

namespace homonet::calibrate {

/// Value lists for the eight searched hyperparameters. Enumeration order is
/// the field order below, first field outermost.
struct GridSpec {
  std::vector<double> alpha{0.0, 0.1, 0.16, 0.25};
  std::vector<double> beta{0.0, 0.06, 0.1};
  std::vector<double> delta_base{0.0, 0.10, 0.20, 0.25};
  std::vector<double> delta_scale{0.5, 1.5, 2.5, 3.5};
  std::vector<double> delta_cap{0.40, 0.42, 0.44};
  std::vector<double> eta_base{0.0, 0.02, 0.03, 0.04, 0.05};
  std::vector<double> eta_scale{0.01, 0.05, 0.1};
  std::vector<double> candidates_scale{8, 12, 24, 36};

  void validate() const;
  std::size_t size() const;

  /// INI file with a [grid] section; keys are the hyperparameter names
  /// (CONN_EXP_WEIGHT, ...), values comma-separated lists. Missing keys keep
  /// their defaults.
  static GridSpec load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

/// Cartesian product applied on top of `base` (which supplies mu, theta,
/// gamma, k_max, temperature, logit form and an explicit eta cap, if any).
std::vector<linkgen::RawHyperParams> enumerate(const GridSpec& grid,
                                               const linkgen::RawHyperParams& base = {});

struct GridResult {
  std::size_t index = 0;
  linkgen::RawHyperParams config;
  std::vector<metrics::MetricsReport> reports;
  metrics::MetricValues mean{};
  double ned = 0.0;  // +infinity when the configuration failed
  std::size_t rank = 0;
  std::optional<std::string> error;

  bool failed() const { return error.has_value(); }
};

struct EvaluateOptions {
  std::size_t max_pairs = 1'000'000;
  unsigned workers = 1;
  std::size_t max_edges = 0;  // per generated graph; 0 = no limit
};

/// Generates and measures one network per seed; the NED is taken on the
/// seed-mean fingerprint. Generation errors are recorded in the result.
GridResult evaluate(const linkgen::RawHyperParams& config, const GeneratorConfig& base,
                    std::size_t n, const std::vector<std::uint64_t>& seeds,
                    const metrics::ReferenceTargets& targets,
                    const metrics::MetricValues& pool_scales,
                    const EvaluateOptions& options = {});

struct SearchOptions {
  /// Append-only record file; enables resume when set.
  std::optional<std::filesystem::path> checkpoint;
  bool resume = false;
  std::size_t checkpoint_every = 16;
  std::size_t max_pairs = 1'000'000;
  unsigned workers = 1;
  std::size_t max_edges = 0;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct SearchOutcome {
  std::vector<GridResult> ranked;  // ascending NED, ties by enumeration index
  metrics::MetricValues pool_scales{};
  std::size_t evaluated_now = 0;  // configurations computed in this call
};

/// Evaluates every configuration, then scores all of them with per-metric
/// min-max scales over the evaluated mean fingerprints plus the targets.
/// With a checkpoint, finished records are appended in enumeration order every
/// `checkpoint_every` configurations, and a resumed run skips them.
SearchOutcome search(const GridSpec& grid, const GeneratorConfig& base, std::size_t n,
                     const std::vector<std::uint64_t>& seeds,
                     const metrics::ReferenceTargets& targets,
                     const SearchOptions& options = {});

/// Ranks precomputed results (NED and rank are overwritten).
SearchOutcome rank(std::vector<GridResult> results, const metrics::ReferenceTargets& targets);

/// One JSON object per configuration with NED and rank, in ranked order.
void write_ranking(std::ostream& out, const SearchOutcome& outcome);

/// Top rows as a table with columns eta0 kappa delta0 lambda delta_cap zeta
/// alpha beta NED.
void write_summary(std::ostream& out, const SearchOutcome& outcome, std::size_t top = 5);

}  // namespace homonet::calibrate
