#include "homonet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "homonet/error.hpp"

namespace homonet::sampling {

namespace {

// Lazily drawn uniform permutation of the node ids; supplies sample starts
// and re-seeds.
class NodeOrder {
 public:
  NodeOrder(std::size_t n, std::uint64_t seed)
      : rng_(seed, stream::kSamplerOrder), perm_(n) {
    std::iota(perm_.begin(), perm_.end(), NodeId{0});
  }

  NodeId next() {
    if (pos_ >= perm_.size()) throw InputError("sampler exhausted the source graph");
    const std::size_t j = pos_ + rng_.below(perm_.size() - pos_);
    std::swap(perm_[pos_], perm_[j]);
    return perm_[pos_++];
  }

  NodeId next_unvisited(const std::vector<char>& visited) {
    NodeId u = next();
    while (visited[u]) u = next();
    return u;
  }

 private:
  Rng rng_;
  std::vector<NodeId> perm_;
  std::size_t pos_ = 0;
};

class VisitSet {
 public:
  explicit VisitSet(std::size_t n) : flags(n, 0) {}
  bool add(NodeId u) {
    if (flags[u]) return false;
    flags[u] = 1;
    nodes.push_back(u);
    return true;
  }
  std::size_t size() const { return nodes.size(); }
  std::vector<NodeId> sorted() const {
    std::vector<NodeId> out = nodes;
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<char> flags;
  std::vector<NodeId> nodes;
};

// Shared driver for the two walkers: `step` moves the walker and returns its
// new position. Re-seeds from the node order when the walker is isolated or
// has found nothing new for kStuckFactor * target steps.
template <typename Step>
std::vector<NodeId> walk(const DirectedGraph& g, const SampleSpec& spec, Step&& step) {
  VisitSet visited(g.node_count());
  NodeOrder order(g.node_count(), spec.seed);
  Rng rng(spec.seed, stream::kSampler);
  const std::uint64_t budget = static_cast<std::uint64_t>(kStuckFactor) * spec.target;

  NodeId start = order.next();
  visited.add(start);
  NodeId current = start;
  std::uint64_t stuck = 0;
  while (visited.size() < spec.target) {
    if (g.degree(start) == 0 || stuck > budget) {
      start = order.next_unvisited(visited.flags);
      visited.add(start);
      current = start;
      stuck = 0;
      continue;
    }
    current = step(start, current, rng);
    if (visited.add(current)) {
      stuck = 0;
    } else {
      ++stuck;
    }
  }
  return visited.sorted();
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::kRandomNode:
      return "random_node";
    case Method::kForestFire:
      return "forest_fire";
    case Method::kRandomWalk:
      return "random_walk";
    case Method::kPageRankNode:
      return "pagerank_node";
    case Method::kMhrw:
      return "mhrw";
  }
  return "unknown";
}

Method parse_method(const std::string& text) {
  for (Method m : kAllMethods) {
    if (to_string(m) == text) return m;
  }
  throw InputError("unknown sampling method '" + text + "'");
}

void SampleSpec::validate(std::size_t source_nodes) const {
  if (target < 1) throw InputError("sample target must be >= 1");
  if (target > source_nodes) {
    throw InputError("sample target " + std::to_string(target) + " exceeds source size " +
                     std::to_string(source_nodes));
  }
  for (double p : {forward_burning, restart, damping}) {
    if (!(p >= 0.0 && p < 1.0)) throw InputError("sampler probabilities must lie in [0,1)");
  }
}

std::vector<NodeId> random_node_set(const DirectedGraph& g, const SampleSpec& spec) {
  spec.validate(g.node_count());
  NodeOrder order(g.node_count(), spec.seed);
  std::vector<NodeId> nodes(spec.target);
  for (auto& u : nodes) u = order.next();
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

std::vector<NodeId> forest_fire_set(const DirectedGraph& g, const SampleSpec& spec) {
  spec.validate(g.node_count());
  const OutAdjacency out(g);
  VisitSet burned(g.node_count());
  NodeOrder order(g.node_count(), spec.seed);
  Rng rng(spec.seed, stream::kSampler);
  std::vector<NodeId> frontier;
  std::vector<NodeId> fresh;
  while (burned.size() < spec.target) {
    const NodeId seed_node = order.next_unvisited(burned.flags);
    burned.add(seed_node);
    frontier.assign(1, seed_node);
    for (std::size_t head = 0; head < frontier.size() && burned.size() < spec.target; ++head) {
      const NodeId u = frontier[head];
      const std::uint64_t spread = rng.geometric_failures(spec.forward_burning);
      if (spread == 0) continue;
      fresh.clear();
      for (const NodeId* v = out.begin(u); v != out.end(u); ++v) {
        if (!burned.flags[*v]) fresh.push_back(*v);
      }
      const std::size_t take = std::min<std::uint64_t>(spread, fresh.size());
      for (std::size_t s = 0; s < take && burned.size() < spec.target; ++s) {
        const std::size_t j = s + rng.below(fresh.size() - s);
        std::swap(fresh[s], fresh[j]);
        burned.add(fresh[s]);
        frontier.push_back(fresh[s]);
      }
    }
  }
  return burned.sorted();
}

std::vector<NodeId> random_walk_set(const DirectedGraph& g, const SampleSpec& spec) {
  spec.validate(g.node_count());
  return walk(g, spec, [&](NodeId start, NodeId current, Rng& rng) {
    if (rng.uniform() < spec.restart) return start;
    const auto& nb = g.neighbors(current);
    return nb[rng.below(nb.size())];
  });
}

double mhrw_acceptance(std::size_t degree_from, std::size_t degree_to) {
  if (degree_to == 0) return 0.0;
  return std::min(1.0, static_cast<double>(degree_from) / static_cast<double>(degree_to));
}

std::vector<NodeId> mhrw_set(const DirectedGraph& g, const SampleSpec& spec) {
  spec.validate(g.node_count());
  return walk(g, spec, [&](NodeId, NodeId current, Rng& rng) {
    const auto& nb = g.neighbors(current);
    const NodeId proposal = nb[rng.below(nb.size())];
    return rng.uniform() < mhrw_acceptance(nb.size(), g.degree(proposal)) ? proposal : current;
  });
}

std::vector<std::uint64_t> mhrw_visit_counts(const DirectedGraph& g, NodeId start,
                                             std::uint64_t steps, Rng& rng) {
  std::vector<std::uint64_t> counts(g.node_count(), 0);
  NodeId current = start;
  for (std::uint64_t s = 0; s < steps; ++s) {
    const auto& nb = g.neighbors(current);
    if (!nb.empty()) {
      const NodeId proposal = nb[rng.below(nb.size())];
      if (rng.uniform() < mhrw_acceptance(nb.size(), g.degree(proposal))) current = proposal;
    }
    ++counts[current];
  }
  return counts;
}

PageRankResult pagerank(const DirectedGraph& g, double damping, double tolerance,
                        std::size_t max_iterations) {
  const std::size_t n = g.node_count();
  PageRankResult result;
  if (n == 0) return result;
  const OutAdjacency out(g);
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> score(n, uniform);
  std::vector<double> next(n);
  for (result.iterations = 1; result.iterations <= max_iterations; ++result.iterations) {
    double dangling = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      if (out.out_degree(u) == 0) dangling += score[u];
    }
    const double base = (1.0 - damping) * uniform + damping * dangling * uniform;
    std::fill(next.begin(), next.end(), base);
    for (NodeId u = 0; u < n; ++u) {
      const std::size_t deg = out.out_degree(u);
      if (deg == 0) continue;
      const double share = damping * score[u] / static_cast<double>(deg);
      for (const NodeId* v = out.begin(u); v != out.end(u); ++v) next[*v] += share;
    }
    double residual = 0.0;
    for (NodeId u = 0; u < n; ++u) residual += std::abs(next[u] - score[u]);
    score.swap(next);
    result.residual = residual;
    if (residual < tolerance) break;
  }
  result.iterations = std::min(result.iterations, max_iterations);
  result.scores = std::move(score);
  return result;
}

std::vector<NodeId> pagerank_node_set(const DirectedGraph& g, const SampleSpec& spec) {
  spec.validate(g.node_count());
  const auto pr = pagerank(g, spec.damping);
  std::vector<NodeId> ids(g.node_count());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::stable_sort(ids.begin(), ids.end(),
                   [&](NodeId a, NodeId b) { return pr.scores[a] > pr.scores[b]; });
  ids.resize(spec.target);
  std::sort(ids.begin(), ids.end());
  return ids;
}

DirectedGraph random_node(const DirectedGraph& g, const SampleSpec& spec) {
  return induced_subgraph(g, random_node_set(g, spec));
}
DirectedGraph forest_fire(const DirectedGraph& g, const SampleSpec& spec) {
  return induced_subgraph(g, forest_fire_set(g, spec));
}
DirectedGraph random_walk(const DirectedGraph& g, const SampleSpec& spec) {
  return induced_subgraph(g, random_walk_set(g, spec));
}
DirectedGraph pagerank_node(const DirectedGraph& g, const SampleSpec& spec) {
  return induced_subgraph(g, pagerank_node_set(g, spec));
}
DirectedGraph mhrw(const DirectedGraph& g, const SampleSpec& spec) {
  return induced_subgraph(g, mhrw_set(g, spec));
}

DirectedGraph sample(const DirectedGraph& g, const SampleSpec& spec) {
  switch (spec.method) {
    case Method::kRandomNode:
      return random_node(g, spec);
    case Method::kForestFire:
      return forest_fire(g, spec);
    case Method::kRandomWalk:
      return random_walk(g, spec);
    case Method::kPageRankNode:
      return pagerank_node(g, spec);
    case Method::kMhrw:
      return mhrw(g, spec);
  }
  throw InputError("unknown sampling method");
}

}  // namespace homonet::sampling
