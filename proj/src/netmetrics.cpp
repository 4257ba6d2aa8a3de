#include "homonet/netmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "homonet/error.hpp"
#include "homonet/parallel.hpp"

namespace homonet::metrics {

double density(const DirectedGraph& g) {
  const double n = static_cast<double>(g.node_count());
  if (g.node_count() < 2) throw InputError("density needs at least 2 nodes");
  return static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

double avg_clustering(const DirectedGraph& g, unsigned workers) {
  const std::size_t n = g.node_count();
  if (n == 0) throw InputError("clustering needs at least 1 node");
  // Orient every undirected edge toward the endpoint of higher (degree, id)
  // rank; each triangle is then found exactly once from its lowest vertex.
  auto before = [&](NodeId a, NodeId b) {
    return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a < b);
  };
  std::vector<std::size_t> offsets(n + 1, 0);
  for (NodeId u = 0; u < n; ++u) {
    std::size_t count = 0;
    for (NodeId v : g.neighbors(u)) count += before(u, v) ? 1 : 0;
    offsets[u + 1] = offsets[u] + count;
  }
  std::vector<NodeId> forward(offsets[n]);
  for (NodeId u = 0; u < n; ++u) {
    std::size_t at = offsets[u];
    for (NodeId v : g.neighbors(u)) {
      if (before(u, v)) forward[at++] = v;
    }
  }

  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  const std::size_t chunk = (n + chunks - 1) / chunks;
  std::vector<std::vector<std::uint64_t>> partial(chunks);
  parallel_for(workers, 0, chunks, [&](std::size_t c) {
    auto& tri = partial[c];
    tri.assign(n, 0);
    std::vector<std::uint32_t> mark(n, 0);
    std::uint32_t stamp = 0;
    const std::size_t lo = c * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    for (std::size_t u = lo; u < hi; ++u) {
      if (offsets[u + 1] - offsets[u] < 2) continue;
      ++stamp;
      for (std::size_t a = offsets[u]; a < offsets[u + 1]; ++a) mark[forward[a]] = stamp;
      for (std::size_t a = offsets[u]; a < offsets[u + 1]; ++a) {
        const NodeId v = forward[a];
        for (std::size_t b = offsets[v]; b < offsets[v + 1]; ++b) {
          const NodeId w = forward[b];
          if (mark[w] != stamp) continue;
          ++tri[u];
          ++tri[v];
          ++tri[w];
        }
      }
    }
  });

  double total = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t k = g.degree(static_cast<NodeId>(u));
    if (k < 2) continue;
    std::uint64_t triangles = 0;
    for (const auto& tri : partial) triangles += tri[u];
    total += 2.0 * static_cast<double>(triangles) /
             (static_cast<double>(k) * static_cast<double>(k - 1));
  }
  return total / static_cast<double>(n);
}

std::vector<NodeId> largest_component(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::int64_t> label(n, -1);
  std::vector<NodeId> best;
  std::vector<NodeId> current;
  for (NodeId s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    current.clear();
    current.push_back(s);
    label[s] = s;
    for (std::size_t head = 0; head < current.size(); ++head) {
      for (NodeId v : g.neighbors(current[head])) {
        if (label[v] < 0) {
          label[v] = s;
          current.push_back(v);
        }
      }
    }
    if (current.size() > best.size()) best = current;
  }
  std::sort(best.begin(), best.end());
  return best;
}

double lcc_proportion(const DirectedGraph& g) {
  if (g.node_count() == 0) throw InputError("LCC needs at least 1 node");
  return static_cast<double>(largest_component(g).size()) / static_cast<double>(g.node_count());
}

ShortestPathEstimate norm_shortest_path(const DirectedGraph& g, std::size_t max_pairs, Rng& rng,
                                        unsigned workers) {
  ShortestPathEstimate est;
  const std::size_t n = g.node_count();
  if (n < 2) throw InputError("shortest path needs at least 2 nodes");
  if (g.edge_count() == 0) return est;

  std::vector<NodeId> component = largest_component(g);
  const std::size_t size = component.size();
  const std::uint64_t unordered_pairs =
      static_cast<std::uint64_t>(size) * static_cast<std::uint64_t>(size - 1) / 2;

  std::vector<NodeId> sources;
  if (unordered_pairs <= max_pairs) {
    sources = component;
    est.exact = true;
  } else {
    const std::size_t count = std::clamp<std::size_t>(max_pairs, 1, size);
    for (std::size_t s = 0; s < count; ++s) {
      const std::size_t j = s + rng.below(size - s);
      std::swap(component[s], component[j]);
    }
    sources.assign(component.begin(), component.begin() + static_cast<std::ptrdiff_t>(count));
    est.exact = count == size;
  }

  // Per-source hop sums are integers, so the total does not depend on how
  // sources are spread over workers.
  std::vector<std::uint64_t> sums(sources.size(), 0);
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, sources.size()));
  const std::size_t chunk = (sources.size() + chunks - 1) / chunks;
  parallel_for(workers, 0, chunks, [&](std::size_t c) {
    std::vector<std::uint32_t> dist(n, 0);
    std::vector<std::uint32_t> seen(n, 0);
    std::vector<NodeId> queue;
    queue.reserve(size);
    const std::size_t lo = c * chunk;
    const std::size_t hi = std::min(sources.size(), lo + chunk);
    for (std::size_t s = lo; s < hi; ++s) {
      const auto stamp = static_cast<std::uint32_t>(s + 1);
      queue.clear();
      queue.push_back(sources[s]);
      seen[sources[s]] = stamp;
      dist[sources[s]] = 0;
      std::uint64_t total = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        for (NodeId v : g.neighbors(u)) {
          if (seen[v] == stamp) continue;
          seen[v] = stamp;
          dist[v] = dist[u] + 1;
          total += dist[v];
          queue.push_back(v);
        }
      }
      sums[s] = total;
    }
  });

  std::uint64_t total = 0;
  for (auto s : sums) total += s;
  est.sources = sources.size();
  est.pairs = static_cast<std::uint64_t>(sources.size()) * (size - 1);
  if (est.pairs == 0) return est;
  const double mean = static_cast<double>(total) / static_cast<double>(est.pairs);
  est.value = mean / std::log2(static_cast<double>(n));
  return est;
}

double modularity(const DirectedGraph& g, const std::vector<std::uint32_t>& community) {
  const std::size_t n = g.node_count();
  if (community.size() != n) throw InputError("partition size differs from node count");
  std::size_t undirected_edges = 0;
  for (NodeId u = 0; u < n; ++u) undirected_edges += g.degree(u);
  if (undirected_edges == 0) return kUndefined;
  const double two_m = static_cast<double>(undirected_edges);

  const std::uint32_t labels = n == 0 ? 0 : *std::max_element(community.begin(), community.end()) + 1;
  std::vector<double> inside(labels, 0.0);
  std::vector<double> total(labels, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    total[community[u]] += static_cast<double>(g.degree(u));
    for (NodeId v : g.neighbors(u)) {
      if (community[v] == community[u]) inside[community[u]] += 1.0;
    }
  }
  double q = 0.0;
  for (std::uint32_t c = 0; c < labels; ++c) {
    const double share = total[c] / two_m;
    q += inside[c] / two_m - share * share;
  }
  return q;
}

void MetricsReport::set_values(const MetricValues& v) {
  density = v[kDensity];
  avg_clustering = v[kClustering];
  lcc_proportion = v[kLcc];
  norm_shortest_path = v[kShortestPath];
  modularity = v[kModularity];
}

bool MetricsReport::complete() const {
  for (double v : values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

MetricsReport report(const DirectedGraph& g, const ReportOptions& options) {
  if (g.node_count() < 2) throw InputError("metrics need at least 2 nodes");
  MetricsReport r;
  r.n = g.node_count();
  r.e = g.edge_count();
  r.seed = options.seed;
  r.density = density(g);
  r.avg_clustering = avg_clustering(g, options.workers);
  r.lcc_proportion = lcc_proportion(g);
  Rng rng(options.seed, stream::kMetrics);
  const auto sp = norm_shortest_path(g, options.max_pairs, rng, options.workers);
  r.norm_shortest_path = sp.value;
  r.sp_pairs_sampled = sp.pairs;
  r.modularity = g.edge_count() == 0 ? kUndefined : louvain(g, options.seed).modularity;
  return r;
}

namespace {

nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double number_from(const nlohmann::json& j, std::string_view key) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw LoadError("metrics record lacks key " + std::string(key));
  if (it->is_null()) return kUndefined;
  return it->get<double>();
}

}  // namespace

nlohmann::json to_json(const MetricsReport& r) {
  nlohmann::json j;
  j["density"] = number_or_null(r.density);
  j["avg_clustering"] = number_or_null(r.avg_clustering);
  j["lcc_proportion"] = number_or_null(r.lcc_proportion);
  j["norm_shortest_path"] = number_or_null(r.norm_shortest_path);
  j["modularity"] = number_or_null(r.modularity);
  j["n"] = r.n;
  j["e"] = r.e;
  j["sp_pairs_sampled"] = r.sp_pairs_sampled;
  j["seed"] = r.seed;
  return j;
}

MetricsReport report_from_json(const nlohmann::json& j) {
  MetricsReport r;
  MetricValues v{};
  for (std::size_t m = 0; m < kMetricCount; ++m) v[m] = number_from(j, kMetricNames[m]);
  r.set_values(v);
  r.n = j.at("n").get<std::size_t>();
  r.e = j.at("e").get<std::size_t>();
  r.sp_pairs_sampled = j.at("sp_pairs_sampled").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

ReferenceTargets ReferenceTargets::bluesky() {
  ReferenceTargets t;
  t.values = {8.6e-6, 0.262, 1.0, 0.230, 0.85};
  return t;
}

ReferenceTargets ReferenceTargets::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open targets file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
  ReferenceTargets t;
  for (std::size_t m = 0; m < kMetricCount; ++m) {
    const std::string key(kMetricNames[m]);
    if (!j.contains(key) || !j[key].is_number()) {
      throw LoadError(path.string() + ": missing numeric target " + key);
    }
    t.values[m] = j[key].get<double>();
    if (j.contains("scales") && j["scales"].contains(key)) {
      t.scales[m] = j["scales"][key].get<double>();
      if (!(t.scales[m] > 0.0)) throw LoadError(path.string() + ": scales must be > 0");
    }
  }
  return t;
}

nlohmann::json ReferenceTargets::to_json() const {
  nlohmann::json j;
  nlohmann::json s;
  for (std::size_t m = 0; m < kMetricCount; ++m) {
    j[std::string(kMetricNames[m])] = values[m];
    s[std::string(kMetricNames[m])] = scales[m];
  }
  j["scales"] = s;
  return j;
}

double ned(const MetricValues& a, const MetricValues& b, const MetricValues& scales) {
  double sum = 0.0;
  for (std::size_t m = 0; m < kMetricCount; ++m) {
    if (!std::isfinite(a[m]) || !std::isfinite(b[m])) {
      throw InputError("NED needs all five metrics; " + std::string(kMetricNames[m]) +
                       " is undefined");
    }
    if (!(scales[m] > 0.0) || !std::isfinite(scales[m])) continue;
    const double z = (a[m] - b[m]) / scales[m];
    sum += z * z;
  }
  return std::sqrt(sum);
}

MetricValues min_max_scales(const std::vector<MetricValues>& pool) {
  MetricValues scales{};
  if (pool.empty()) return scales;
  for (std::size_t m = 0; m < kMetricCount; ++m) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& v : pool) {
      if (!std::isfinite(v[m])) continue;
      lo = std::min(lo, v[m]);
      hi = std::max(hi, v[m]);
    }
    scales[m] = hi > lo ? hi - lo : 0.0;
  }
  return scales;
}

MetricValues mean_values(const std::vector<MetricValues>& values) {
  MetricValues mean{};
  if (values.empty()) return mean;
  for (const auto& v : values) {
    for (std::size_t m = 0; m < kMetricCount; ++m) mean[m] += v[m];
  }
  for (double& x : mean) x /= static_cast<double>(values.size());
  return mean;
}

HomophilyContrast homophily_contrast(const DirectedGraph& g,
                                     const semspace::ProjectionMatrix& points,
                                     std::size_t random_pairs, Rng& rng) {
  HomophilyContrast out;
  const std::size_t n = g.node_count();
  if (points.rows() != n) throw InputError("projection rows differ from node count");
  if (n < 2) throw InputError("homophily contrast needs at least 2 nodes");
  double linked = 0.0;
  for (const Edge& e : g.edges()) linked += semspace::distance(points.row(e.src), points.row(e.dst));
  out.linked_pairs = g.edge_count();
  out.linked_mean = out.linked_pairs ? linked / static_cast<double>(out.linked_pairs) : 0.0;

  std::unordered_set<std::uint64_t> adjacent;
  adjacent.reserve(g.edge_count() * 2);
  for (const Edge& e : g.edges()) {
    adjacent.insert((static_cast<std::uint64_t>(e.src) << 32) | e.dst);
    adjacent.insert((static_cast<std::uint64_t>(e.dst) << 32) | e.src);
  }
  const std::uint64_t possible = static_cast<std::uint64_t>(n) * (n - 1);
  if (adjacent.size() >= possible) return out;
  double random = 0.0;
  while (out.random_pairs < random_pairs) {
    const auto a = static_cast<NodeId>(rng.below(n));
    const auto b = static_cast<NodeId>(rng.below(n));
    if (a == b || adjacent.count((static_cast<std::uint64_t>(a) << 32) | b)) continue;
    random += semspace::distance(points.row(a), points.row(b));
    ++out.random_pairs;
  }
  out.random_mean = random / static_cast<double>(out.random_pairs);
  return out;
}

}  // namespace homonet::metrics
