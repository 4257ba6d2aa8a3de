#pragma once

// Deliberately naive reference implementations. They share no code with the
// library beyond the graph container and are only meant for small inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "homonet/graph.hpp"
#include "homonet/linkgen.hpp"
#include "homonet/rng.hpp"

namespace oracle {

using homonet::DirectedGraph;
using homonet::NodeId;

struct Resolved {
  double k;
  double delta;
  double eta;
  double c;
};

inline Resolved resolve(const homonet::linkgen::RawHyperParams& r, double n) {
  const double l = std::log2(n);
  const bool small = n < 1e4;
  const bool large = n >= 1e5;
  const double d = std::min(r.delta_cap, r.delta_base + r.delta_scale / std::pow(l, r.delta_exponent));
  const double e = std::min(r.eta_cap.value_or(r.eta_base + r.eta_scale),
                            r.eta_base + r.eta_scale / std::pow(l, 0.75));
  const double c = std::max(1.0, std::floor(r.candidates_scale / std::pow(l, r.candidates_exponent)));
  return {
      std::max(1.0, std::floor(std::min(l * r.gamma, r.k_max))),
      small ? d * 0.35 : large ? std::max(d, 0.22 + 0.02 * std::log10(n)) : d,
      small ? e * 0.05 : large ? std::max(e, r.eta_base + 0.02 * std::log10(n)) : e,
      small ? std::max(1.0, std::floor(c * 0.25)) : large ? std::max(c, 6.0) : c,
  };
}

inline double score_exp(double a, double b, double d, double u) { return a * std::exp(-d) + b * u; }
inline double score_lin(double a, double b, double d, double u) { return a * -d + b * u; }
inline double triadic(double delta, double rho) {
  return delta * (1.0 + 1.0 / (1.0 + std::exp(-10.0 * (0.05 - rho))));
}
inline double distant(double eta, double deg) { return eta / (1.0 + std::log(deg + 1.0)); }

// Symmetric 0/1 adjacency of the undirected projection.
inline std::vector<std::vector<int>> adjacency(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (const auto& e : g.edges()) {
    a[e.src][e.dst] = 1;
    a[e.dst][e.src] = 1;
  }
  return a;
}

inline double density(const DirectedGraph& g) {
  const double n = static_cast<double>(g.node_count());
  return static_cast<double>(g.edge_count()) / (n * (n - 1));
}

inline double clustering(const DirectedGraph& g) {
  const auto a = adjacency(g);
  const std::size_t n = a.size();
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> nb;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j]) nb.push_back(j);
    }
    if (nb.size() < 2) continue;
    double links = 0;
    for (std::size_t x = 0; x < nb.size(); ++x) {
      for (std::size_t y = x + 1; y < nb.size(); ++y) links += a[nb[x]][nb[y]];
    }
    sum += 2.0 * links / (static_cast<double>(nb.size()) * static_cast<double>(nb.size() - 1));
  }
  return sum / static_cast<double>(n);
}

// Floyd-Warshall hop distances; unreachable = large.
inline std::vector<std::vector<int>> all_pairs(const DirectedGraph& g) {
  const auto a = adjacency(g);
  const std::size_t n = a.size();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j]) d[i][j] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

// Component labels by repeated relaxation to the minimum reachable id.
inline std::vector<std::size_t> components(const DirectedGraph& g) {
  const auto d = all_pairs(g);
  const std::size_t n = d.size();
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    label[i] = i;
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] < (1 << 28)) {
        label[i] = j;
        break;
      }
    }
  }
  return label;
}

inline double lcc(const DirectedGraph& g) {
  const auto label = components(g);
  std::vector<std::size_t> size(label.size(), 0);
  for (auto l : label) ++size[l];
  return static_cast<double>(*std::max_element(size.begin(), size.end())) /
         static_cast<double>(label.size());
}

inline double shortest_path(const DirectedGraph& g) {
  const auto label = components(g);
  const std::size_t n = label.size();
  std::vector<std::size_t> size(n, 0);
  for (auto l : label) ++size[l];
  // Largest component; ties go to the one holding the lowest id.
  std::size_t best = label[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (size[label[i]] > size[best]) best = label[i];
  }
  const auto d = all_pairs(g);
  double total = 0;
  double pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || label[i] != best || label[j] != best) continue;
      total += d[i][j];
      pairs += 1;
    }
  }
  return total / pairs / std::log2(static_cast<double>(n));
}

inline double modularity(const DirectedGraph& g, const std::vector<std::uint32_t>& community) {
  const auto a = adjacency(g);
  const std::size_t n = a.size();
  std::vector<double> k(n, 0);
  double two_m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
    two_m += k[i];
  }
  double q = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (community[i] == community[j]) q += a[i][j] - k[i] * k[j] / two_m;
    }
  }
  return q / two_m;
}

// Random directed graph with n nodes and edge probability p (may include
// reciprocal pairs).
inline DirectedGraph random_graph(std::size_t n, double p, homonet::Rng& rng) {
  std::vector<homonet::Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i != j && rng.uniform() < p) edges.push_back({i, j});
    }
  }
  return DirectedGraph::from_edges(n, edges);
}

}  // namespace oracle
