#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string_view>
#include <vector>

#include "homonet/graph.hpp"
#include "homonet/rng.hpp"
#include "homonet/semspace.hpp"

#include "json.hpp"

namespace homonet::metrics {

/// The five-metric structural fingerprint, in a fixed order.
enum Metric : std::size_t {
  kDensity,
  kClustering,
  kLcc,
  kShortestPath,
  kModularity,
};
inline constexpr std::size_t kMetricCount = 5;
inline constexpr std::array<std::string_view, kMetricCount> kMetricNames{
    "density", "avg_clustering", "lcc_proportion", "norm_shortest_path", "modularity"};

using MetricValues = std::array<double, kMetricCount>;

inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

/// E / (N (N - 1)) over directed edges.
double density(const DirectedGraph& g);

/// Mean local clustering on the undirected projection; nodes of degree < 2
/// contribute 0.
double avg_clustering(const DirectedGraph& g, unsigned workers = 1);

/// Nodes of the largest weakly connected component, ascending. Ties between
/// equally large components go to the one holding the lowest id.
std::vector<NodeId> largest_component(const DirectedGraph& g);
double lcc_proportion(const DirectedGraph& g);

struct ShortestPathEstimate {
  double value = kUndefined;  // mean hop distance / log2(N); NaN when undefined
  bool exact = false;
  std::size_t sources = 0;
  std::uint64_t pairs = 0;  // ordered (source, target) pairs averaged over
};

/// Mean shortest-path length over pairs inside the largest component of the
/// undirected projection, divided by log2(N). Exact when the component's
/// unordered pair count is <= max_pairs; otherwise BFS from min(max_pairs,
/// component size) uniformly drawn sources. Undefined for edgeless graphs.
ShortestPathEstimate norm_shortest_path(const DirectedGraph& g, std::size_t max_pairs,
                                        Rng& rng, unsigned workers = 1);

struct Partition {
  std::vector<std::uint32_t> community;  // per node, dense labels 0..count-1
  std::size_t count = 0;
  double modularity = kUndefined;
};

/// Newman modularity of a partition of the undirected projection with unit
/// weights. NaN for edgeless graphs.
double modularity(const DirectedGraph& g, const std::vector<std::uint32_t>& community);

/// Multi-level Louvain on the undirected projection. Node visiting order on
/// each level is a permutation drawn from the seed.
Partition louvain(const DirectedGraph& g, std::uint64_t seed);

struct MetricsReport {
  double density = kUndefined;
  double avg_clustering = kUndefined;
  double lcc_proportion = kUndefined;
  double norm_shortest_path = kUndefined;
  double modularity = kUndefined;
  std::size_t n = 0;
  std::size_t e = 0;
  std::uint64_t sp_pairs_sampled = 0;
  std::uint64_t seed = 0;

  MetricValues values() const {
    return {density, avg_clustering, lcc_proportion, norm_shortest_path, modularity};
  }
  void set_values(const MetricValues& v);
  bool complete() const;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

struct ReportOptions {
  std::size_t max_pairs = 1'000'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

MetricsReport report(const DirectedGraph& g, const ReportOptions& options = {});

/// Flat record with exactly the keys density, avg_clustering, lcc_proportion,
/// norm_shortest_path, modularity, n, e, sp_pairs_sampled, seed. Undefined
/// values are written as null.
nlohmann::json to_json(const MetricsReport& r);
MetricsReport report_from_json(const nlohmann::json& j);

struct ReferenceTargets {
  MetricValues values{};
  MetricValues scales{1.0, 1.0, 1.0, 1.0, 1.0};

  /// Full Bluesky follower graph fingerprint.
  static ReferenceTargets bluesky();
  static ReferenceTargets load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

/// sqrt(sum(((a - b) / scale)^2)); a metric whose scale is not positive
/// contributes 0. Throws InputError when any value is undefined.
double ned(const MetricValues& a, const MetricValues& b, const MetricValues& scales);
inline double ned(const MetricsReport& r, const ReferenceTargets& t) {
  return ned(r.values(), t.values, t.scales);
}

/// Per-metric max - min over a pool of fingerprints.
MetricValues min_max_scales(const std::vector<MetricValues>& pool);

/// Element-wise mean.
MetricValues mean_values(const std::vector<MetricValues>& values);

/// Mean semantic distance over linked pairs versus over uniformly drawn
/// non-linked pairs.
struct HomophilyContrast {
  double linked_mean = 0.0;
  double random_mean = 0.0;
  std::size_t linked_pairs = 0;
  std::size_t random_pairs = 0;
};

HomophilyContrast homophily_contrast(const DirectedGraph& g,
                                     const semspace::ProjectionMatrix& points,
                                     std::size_t random_pairs, Rng& rng);

}  // namespace homonet::metrics
