#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "anonsat/geo.hpp"
#include "anonsat/link_model.hpp"

namespace anonsat {

using Path = std::vector<NodeId>;

inline constexpr std::uint64_t kDefaultPathCap = 10'000'000;

/// Undirected gateway mesh. Nodes are stored sorted by id; node ids survive
/// subgraph extraction, so ids need not be contiguous. Algorithms address
/// nodes by dense index internally and by id at the public surface.
class GatewayGraph {
 public:
  struct Neighbor {
    std::size_t index;
    double distance_m;
    double rate_bps;
  };

  struct Edge {
    NodeId u;
    NodeId v;
    double distance_m;
    double rate_bps;
  };

  GatewayGraph() = default;

  /// Builds a graph from explicit nodes and undirected edges. Throws Error on
  /// self-loops, duplicate edges, duplicate node ids or unknown endpoints.
  static GatewayGraph from_edges(std::vector<GeoPoint> nodes, const std::vector<Edge>& edges);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  std::size_t edge_count() const { return edge_count_; }

  NodeId id(std::size_t index) const { return nodes_[index].id; }
  const GeoPoint& point(std::size_t index) const { return nodes_[index]; }
  const std::vector<GeoPoint>& nodes() const { return nodes_; }

  bool contains(NodeId id) const;
  /// Throws UnknownNodeError for ids not in the graph.
  std::size_t index_of(NodeId id) const;

  /// Neighbors of a node, ascending by index (equivalently by id).
  std::span<const Neighbor> neighbors(std::size_t index) const { return adjacency_[index]; }
  std::size_t degree(std::size_t index) const { return adjacency_[index].size(); }

  /// Adjacency slot of `to` in `from`'s neighbor list, or npos.
  std::size_t slot_of(std::size_t from, std::size_t to) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Every edge once, with u < v, ordered by (u, v).
  std::vector<Edge> edges() const;

  friend bool operator==(const GatewayGraph& a, const GatewayGraph& b);

 private:
  std::vector<GeoPoint> nodes_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Connects every pair within the profile range; edges carry length and link rate.
GatewayGraph build_graph(const Dataset& d, const LinkProfile& profile);

/// Induced subgraph on the largest connected component; ties go to the
/// component with the smallest minimum node id. Ids are preserved.
GatewayGraph largest_component(const GatewayGraph& g);

bool is_connected(const GatewayGraph& g);

/// Unweighted hop counts from a source to every node.
struct HopMap {
  static constexpr int kUnreachable = -1;

  NodeId source = 0;
  std::vector<NodeId> ids;  // graph ids, ascending
  std::vector<int> hops;    // parallel to ids

  /// Hop count to `id`, or kUnreachable. Throws UnknownNodeError.
  int at(NodeId id) const;
};

HopMap hop_distances(const GatewayGraph& g, NodeId src);

/// Nodes v != node with hop distance in [1, max_hops], ascending by id.
std::vector<NodeId> reachable_within(const GatewayGraph& g, NodeId node, unsigned max_hops);

/// Number of simple paths src -> dst with 1..max_len edges.
std::uint64_t count_simple_paths(const GatewayGraph& g, NodeId src, NodeId dst, unsigned max_len);

/// All simple paths src -> dst with at most max_len edges, ordered by
/// (length, lexicographic ids). Throws ResourceError past `cap` paths.
std::vector<Path> enumerate_simple_paths(const GatewayGraph& g, NodeId src, NodeId dst,
                                         unsigned max_len, std::uint64_t cap = kDefaultPathCap);

/// Greedy internally-vertex-disjoint selection over enumerate_simple_paths order.
std::vector<Path> select_disjoint_paths(const GatewayGraph& g, NodeId src, NodeId dst,
                                        unsigned max_len, std::uint64_t cap = kDefaultPathCap);

std::size_t disjoint_paths(const GatewayGraph& g, NodeId src, NodeId dst, unsigned max_len,
                           std::uint64_t cap = kDefaultPathCap);

/// Index-based building blocks shared by the protocol, the simulator and the
/// metric kernels. No id validation happens here.
namespace kernels {

/// BFS hop counts by node index; HopMap::kUnreachable where unreachable.
std::vector<int> bfs_hops(const GatewayGraph& g, std::size_t src);

/// BFS truncated at max_hops: indices v != src with hop distance <= max_hops,
/// ascending.
std::vector<std::size_t> reachable_indices(const GatewayGraph& g, std::size_t src, unsigned max_hops);

/// Per-target simple path counts from one source: result[v] is the number of
/// simple paths src -> v with 1..max_len edges (result[src] = 0). One DFS
/// serves every target.
std::vector<std::uint64_t> path_counts_from(const GatewayGraph& g, std::size_t src, unsigned max_len);

/// Greedy disjoint-path count without materializing the path list: paths are
/// generated in (length, lexicographic) order and any branch through an
/// already-claimed interior vertex is pruned. Same result as
/// select_disjoint_paths().size().
std::size_t disjoint_path_count(const GatewayGraph& g, std::size_t src, std::size_t dst, unsigned max_len);

}  // namespace kernels

}  // namespace anonsat
