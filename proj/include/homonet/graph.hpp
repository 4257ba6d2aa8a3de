#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace homonet {

using NodeId = std::uint32_t;

/// (follower, followee): "src follows dst".
struct Edge {
  NodeId src = 0;
  NodeId dst = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed follower graph with its undirected neighborhood map.
///
/// Invariants: no self-loops, no duplicate directed edge, and H is exactly the
/// undirected closure of the edge list.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(std::size_t n) : neighbors_(n) {}

  struct BuildStats {
    std::size_t duplicates_dropped = 0;
    std::size_t self_loops_dropped = 0;
  };

  /// Builds from an edge list, keeping the first occurrence of each directed
  /// edge and dropping self-loops. Throws InputError on out-of-range endpoints.
  static DirectedGraph from_edges(std::size_t n, const std::vector<Edge>& edges,
                                  BuildStats* stats = nullptr);

  std::size_t node_count() const { return neighbors_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Undirected neighborhood H[u], in insertion order.
  const std::vector<NodeId>& neighbors(NodeId u) const { return neighbors_[u]; }
  std::size_t degree(NodeId u) const { return neighbors_[u].size(); }

  /// Appends (src, dst) and mirrors it into H. The caller guarantees that
  /// src != dst and that neither direction is present yet; reciprocal edges
  /// must go through from_edges.
  void add_new_link(NodeId src, NodeId dst) {
    edges_.push_back({src, dst});
    neighbors_[src].push_back(dst);
    neighbors_[dst].push_back(src);
  }

  /// Edge list sorted by (src, dst).
  std::vector<Edge> sorted_edges() const;

  /// Full rescan of the invariants; returns the first violation found.
  std::optional<std::string> check_invariants() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> neighbors_;
};

/// Compressed out-adjacency (directed) for traversal-heavy consumers.
struct OutAdjacency {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> targets;

  explicit OutAdjacency(const DirectedGraph& g);
  std::size_t out_degree(NodeId u) const { return offsets[u + 1] - offsets[u]; }
  const NodeId* begin(NodeId u) const { return targets.data() + offsets[u]; }
  const NodeId* end(NodeId u) const { return targets.data() + offsets[u + 1]; }
};

/// Induced subgraph on `nodes`; node k of the result is the k-th smallest id
/// in `nodes`. Duplicate ids are ignored.
DirectedGraph induced_subgraph(const DirectedGraph& g, std::vector<NodeId> nodes);

/// Writes "src,dst" header plus one sorted edge per line.
void write_edge_list(std::ostream& out, const DirectedGraph& g);
void write_edge_list(const std::filesystem::path& path, const DirectedGraph& g);

struct LoadedGraph {
  DirectedGraph graph;
  /// dense id -> original label
  std::vector<std::string> original_ids;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

struct EdgeListOptions {
  /// When set, ids must be integers in [0, n) and are kept as-is, so isolated
  /// nodes survive a write/read cycle. Otherwise ids are arbitrary strings
  /// remapped to 0..N-1 in order of first appearance.
  std::optional<std::size_t> dense_node_count;
};

/// Streaming single-pass CSV reader. Accepts an optional "src,dst" header.
/// Throws LoadError naming the line number on malformed input.
LoadedGraph load_edge_list(std::istream& in, const EdgeListOptions& options = {});
LoadedGraph load_edge_list(const std::filesystem::path& path,
                           const EdgeListOptions& options = {});

/// "orig_id,dense_id" table.
void write_id_mapping(const std::filesystem::path& path, const std::vector<std::string>& ids);

}  // namespace homonet
