#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "homonet/graph.hpp"
#include "homonet/rng.hpp"

namespace homonet::sampling {

enum class Method { kRandomNode, kForestFire, kRandomWalk, kPageRankNode, kMhrw };

inline constexpr Method kAllMethods[] = {Method::kRandomNode, Method::kForestFire,
                                         Method::kRandomWalk, Method::kPageRankNode,
                                         Method::kMhrw};

std::string to_string(Method m);
/// Accepts random_node, forest_fire, random_walk, pagerank_node, mhrw.
Method parse_method(const std::string& text);

struct SampleSpec {
  Method method = Method::kRandomNode;
  std::size_t target = 0;
  double forward_burning = 0.7;  // forest fire
  double restart = 0.15;         // random walk
  double damping = 0.85;         // PageRank
  std::uint64_t seed = 0;

  /// Throws InputError unless target <= source size and probabilities lie in [0,1).
  void validate(std::size_t source_nodes) const;
};

/// Walkers re-seed after this many steps (times target) without discovering
/// a new node.
inline constexpr std::size_t kStuckFactor = 100;

/// Node sets (ascending ids) chosen by each method.
std::vector<NodeId> random_node_set(const DirectedGraph& g, const SampleSpec& spec);
std::vector<NodeId> forest_fire_set(const DirectedGraph& g, const SampleSpec& spec);
std::vector<NodeId> random_walk_set(const DirectedGraph& g, const SampleSpec& spec);
std::vector<NodeId> pagerank_node_set(const DirectedGraph& g, const SampleSpec& spec);
std::vector<NodeId> mhrw_set(const DirectedGraph& g, const SampleSpec& spec);

/// Induced subgraphs on the sets above.
DirectedGraph random_node(const DirectedGraph& g, const SampleSpec& spec);
DirectedGraph forest_fire(const DirectedGraph& g, const SampleSpec& spec);
DirectedGraph random_walk(const DirectedGraph& g, const SampleSpec& spec);
DirectedGraph pagerank_node(const DirectedGraph& g, const SampleSpec& spec);
DirectedGraph mhrw(const DirectedGraph& g, const SampleSpec& spec);

DirectedGraph sample(const DirectedGraph& g, const SampleSpec& spec);

struct PageRankResult {
  std::vector<double> scores;
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Power iteration with uniform teleport; dangling mass is spread uniformly.
/// Stops once the L1 change drops below `tolerance`.
PageRankResult pagerank(const DirectedGraph& g, double damping, double tolerance = 1e-8,
                        std::size_t max_iterations = 10'000);

/// Metropolis-Hastings acceptance min(1, deg(u) / deg(v)).
double mhrw_acceptance(std::size_t degree_from, std::size_t degree_to);

/// Visit counts of a single MHRW walker over `steps` transitions on the
/// undirected projection, counting the node occupied after each step.
std::vector<std::uint64_t> mhrw_visit_counts(const DirectedGraph& g, NodeId start,
                                             std::uint64_t steps, Rng& rng);

}  // namespace homonet::sampling
