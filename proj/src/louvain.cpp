#include <algorithm>
#include <numeric>

#include "homonet/netmetrics.hpp"

namespace homonet::metrics {

namespace {

// Symmetric weighted graph used across Louvain levels. self_loop[i] holds
// A_ii, i.e. twice the weight of edges collapsed inside node i, so that
// strength[i] = sum_j A_ij including the diagonal.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> self_loop;
  std::vector<double> strength;
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }
};

LevelGraph from_directed(const DirectedGraph& g) {
  LevelGraph lg;
  const std::size_t n = g.node_count();
  lg.adj.resize(n);
  lg.self_loop.assign(n, 0.0);
  lg.strength.assign(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    lg.adj[u].reserve(g.degree(u));
    for (NodeId v : g.neighbors(u)) lg.adj[u].emplace_back(v, 1.0);
    lg.strength[u] = static_cast<double>(g.degree(u));
    lg.two_m += lg.strength[u];
  }
  return lg;
}

// One local-moving phase. Returns true if any node changed community.
bool move_nodes(const LevelGraph& lg, std::vector<std::uint32_t>& community, Rng& rng) {
  const std::size_t n = lg.size();
  std::vector<double> total(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) total[community[i]] += lg.strength[i];

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<double> link_weight(n, 0.0);
  std::vector<std::uint32_t> touched;
  bool any_move = false;
  constexpr int kMaxPasses = 1000;
  constexpr double kMinGain = 1e-12;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t current = community[i];
      const double k_i = lg.strength[i];
      touched.clear();
      touched.push_back(current);
      link_weight[current] = 0.0;
      for (const auto& [j, w] : lg.adj[i]) {
        const std::uint32_t c = community[j];
        if (link_weight[c] == 0.0 && std::find(touched.begin(), touched.end(), c) == touched.end()) {
          touched.push_back(c);
        }
        link_weight[c] += w;
      }
      total[current] -= k_i;
      // Gain of inserting i into c, up to a constant factor shared by all c.
      auto gain = [&](std::uint32_t c) { return link_weight[c] - total[c] * k_i / lg.two_m; };
      std::uint32_t best = current;
      double best_gain = gain(current);
      for (std::uint32_t c : touched) {
        const double g = gain(c);
        if (g > best_gain + kMinGain) {
          best_gain = g;
          best = c;
        }
      }
      total[best] += k_i;
      for (std::uint32_t c : touched) link_weight[c] = 0.0;
      if (best != current) {
        community[i] = best;
        moved = true;
        any_move = true;
      }
    }
    if (!moved) break;
  }
  return any_move;
}

// Relabels communities densely in order of first appearance.
std::size_t renumber(std::vector<std::uint32_t>& community) {
  std::vector<std::uint32_t> remap(community.size(), ~0u);
  std::uint32_t next = 0;
  for (auto& c : community) {
    if (remap[c] == ~0u) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& community,
                     std::size_t count) {
  LevelGraph out;
  out.adj.resize(count);
  out.self_loop.assign(count, 0.0);
  out.strength.assign(count, 0.0);
  out.two_m = lg.two_m;
  std::vector<double> row(count, 0.0);
  std::vector<std::uint32_t> touched;
  std::vector<std::vector<std::uint32_t>> members(count);
  for (std::uint32_t i = 0; i < lg.size(); ++i) members[community[i]].push_back(i);
  for (std::uint32_t c = 0; c < count; ++c) {
    touched.clear();
    for (std::uint32_t i : members[c]) {
      out.self_loop[c] += lg.self_loop[i];
      out.strength[c] += lg.strength[i];
      for (const auto& [j, w] : lg.adj[i]) {
        const std::uint32_t d = community[j];
        if (d == c) {
          out.self_loop[c] += w;
          continue;
        }
        if (row[d] == 0.0) touched.push_back(d);
        row[d] += w;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t d : touched) {
      out.adj[c].emplace_back(d, row[d]);
      row[d] = 0.0;
    }
  }
  return out;
}

}  // namespace

Partition louvain(const DirectedGraph& g, std::uint64_t seed) {
  Partition result;
  const std::size_t n = g.node_count();
  result.community.resize(n);
  std::iota(result.community.begin(), result.community.end(), 0u);
  result.count = n;
  if (g.edge_count() == 0) return result;

  LevelGraph level = from_directed(g);
  for (std::uint64_t depth = 0;; ++depth) {
    std::vector<std::uint32_t> community(level.size());
    std::iota(community.begin(), community.end(), 0u);
    Rng rng(seed, stream::kLouvain, depth);
    if (!move_nodes(level, community, rng)) break;
    const std::size_t count = renumber(community);
    for (auto& c : result.community) c = community[c];
    if (count == level.size()) break;
    level = aggregate(level, community, count);
  }
  result.count = renumber(result.community);
  result.modularity = modularity(g, result.community);
  return result;
}

}  // namespace homonet::metrics
