#include "homonet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "homonet/error.hpp"

namespace homonet {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

DirectedGraph DirectedGraph::from_edges(std::size_t n, const std::vector<Edge>& edges,
                                        BuildStats* stats) {
  DirectedGraph g(n);
  std::unordered_set<std::uint64_t> directed;
  std::unordered_set<std::uint64_t> undirected;
  directed.reserve(edges.size());
  undirected.reserve(edges.size());
  BuildStats local;
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) throw InputError("edge endpoint out of range");
    if (e.src == e.dst) {
      ++local.self_loops_dropped;
      continue;
    }
    if (!directed.insert(pair_key(e.src, e.dst)).second) {
      ++local.duplicates_dropped;
      continue;
    }
    g.edges_.push_back(e);
    if (undirected.insert(pair_key(std::min(e.src, e.dst), std::max(e.src, e.dst))).second) {
      g.neighbors_[e.src].push_back(e.dst);
      g.neighbors_[e.dst].push_back(e.src);
    }
  }
  if (stats != nullptr) *stats = local;
  return g;
}

std::vector<Edge> DirectedGraph::sorted_edges() const {
  std::vector<Edge> out = edges_;
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> DirectedGraph::check_invariants() const {
  const std::size_t n = node_count();
  std::unordered_set<std::uint64_t> directed;
  std::unordered_set<std::uint64_t> undirected;
  for (const Edge& e : edges_) {
    if (e.src >= n || e.dst >= n) return "edge endpoint out of range";
    if (e.src == e.dst) return "self-loop at " + std::to_string(e.src);
    if (!directed.insert(pair_key(e.src, e.dst)).second) {
      return "duplicate edge " + std::to_string(e.src) + "->" + std::to_string(e.dst);
    }
    undirected.insert(pair_key(std::min(e.src, e.dst), std::max(e.src, e.dst)));
  }
  std::size_t entries = 0;
  for (NodeId u = 0; u < n; ++u) {
    std::unordered_set<NodeId> seen;
    for (NodeId v : neighbors_[u]) {
      if (!seen.insert(v).second) return "duplicate neighbor in H[" + std::to_string(u) + "]";
      if (!undirected.count(pair_key(std::min(u, v), std::max(u, v)))) {
        return "H[" + std::to_string(u) + "] holds " + std::to_string(v) + " without an edge";
      }
    }
    entries += neighbors_[u].size();
  }
  if (entries != 2 * undirected.size()) return "H is missing edges";
  return std::nullopt;
}

OutAdjacency::OutAdjacency(const DirectedGraph& g) : offsets(g.node_count() + 1, 0) {
  for (const Edge& e : g.edges()) ++offsets[e.src + 1];
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  targets.resize(g.edge_count());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : g.edges()) targets[cursor[e.src]++] = e.dst;
}

DirectedGraph induced_subgraph(const DirectedGraph& g, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  constexpr NodeId kAbsent = ~NodeId{0};
  std::vector<NodeId> remap(g.node_count(), kAbsent);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] >= g.node_count()) throw InputError("subgraph node out of range");
    remap[nodes[k]] = static_cast<NodeId>(k);
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (remap[e.src] != kAbsent && remap[e.dst] != kAbsent) {
      kept.push_back({remap[e.src], remap[e.dst]});
    }
  }
  std::sort(kept.begin(), kept.end());
  return DirectedGraph::from_edges(nodes.size(), kept);
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
  out << "src,dst\n";
  for (const Edge& e : g.sorted_edges()) out << e.src << ',' << e.dst << '\n';
}

void write_edge_list(const std::filesystem::path& path, const DirectedGraph& g) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write " + path.string());
  write_edge_list(out, g);
}

LoadedGraph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  LoadedGraph result;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;

  auto intern = [&](std::string_view token, std::size_t line_no) -> NodeId {
    if (options.dense_node_count) {
      std::uint64_t value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() ||
          value >= *options.dense_node_count) {
        throw LoadError("line " + std::to_string(line_no) + ": node id '" + std::string(token) +
                        "' is not an integer in [0, " +
                        std::to_string(*options.dense_node_count) + ")");
      }
      return static_cast<NodeId>(value);
    }
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(ids.size()));
    if (inserted) result.original_ids.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (line_no == 1 && view == "src,dst") continue;
    const auto comma = view.find(',');
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
      throw LoadError("line " + std::to_string(line_no) + ": expected 'src,dst'");
    }
    const auto src_token = trim(view.substr(0, comma));
    const auto dst_token = trim(view.substr(comma + 1));
    if (src_token.empty() || dst_token.empty()) {
      throw LoadError("line " + std::to_string(line_no) + ": empty node id");
    }
    const NodeId src = intern(src_token, line_no);
    const NodeId dst = intern(dst_token, line_no);
    if (src == dst) {
      ++result.self_loops_dropped;
      continue;
    }
    if (!seen.insert(pair_key(src, dst)).second) {
      ++result.duplicates_dropped;
      continue;
    }
    edges.push_back({src, dst});
  }

  std::size_t n = ids.size();
  if (options.dense_node_count) {
    n = *options.dense_node_count;
    result.original_ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) result.original_ids.push_back(std::to_string(i));
  }
  result.graph = DirectedGraph::from_edges(n, edges);
  return result;
}

LoadedGraph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open edge list " + path.string());
  return load_edge_list(in, options);
}

void write_id_mapping(const std::filesystem::path& path, const std::vector<std::string>& ids) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write " + path.string());
  out << "orig_id,dense_id\n";
  for (std::size_t i = 0; i < ids.size(); ++i) out << ids[i] << ',' << i << '\n';
}

}  // namespace homonet
