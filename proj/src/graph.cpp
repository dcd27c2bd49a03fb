#include "anonsat/graph.hpp"

#include <algorithm>
#include <deque>
#include <fmt/format.h>

#include "anonsat/errors.hpp"

namespace anonsat {

GatewayGraph GatewayGraph::from_edges(std::vector<GeoPoint> nodes, const std::vector<Edge>& edges) {
  GatewayGraph g;
  std::sort(nodes.begin(), nodes.end(), [](const GeoPoint& a, const GeoPoint& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].id == nodes[i - 1].id) throw Error(fmt::format("duplicate node id {}", nodes[i].id));
  }
  g.nodes_ = std::move(nodes);
  g.adjacency_.resize(g.nodes_.size());

  for (const auto& e : edges) {
    if (e.u == e.v) throw Error(fmt::format("self-loop on node {}", e.u));
    const std::size_t a = g.index_of(e.u);
    const std::size_t b = g.index_of(e.v);
    g.adjacency_[a].push_back({b, e.distance_m, e.rate_bps});
    g.adjacency_[b].push_back({a, e.distance_m, e.rate_bps});
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& x, const Neighbor& y) { return x.index < y.index; });
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i].index == list[i - 1].index) throw Error("duplicate edge");
    }
  }
  g.edge_count_ = edges.size();
  return g;
}

bool GatewayGraph::contains(NodeId id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const GeoPoint& p, NodeId value) { return p.id < value; });
  return it != nodes_.end() && it->id == id;
}

std::size_t GatewayGraph::index_of(NodeId id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const GeoPoint& p, NodeId value) { return p.id < value; });
  if (it == nodes_.end() || it->id != id) throw UnknownNodeError(fmt::format("unknown gateway id {}", id));
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t GatewayGraph::slot_of(std::size_t from, std::size_t to) const {
  const auto& list = adjacency_[from];
  auto it = std::lower_bound(list.begin(), list.end(), to,
                             [](const Neighbor& n, std::size_t value) { return n.index < value; });
  if (it == list.end() || it->index != to) return npos;
  return static_cast<std::size_t>(it - list.begin());
}

std::vector<GatewayGraph::Edge> GatewayGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < nodes_.size(); ++u) {
    for (const auto& n : adjacency_[u]) {
      if (n.index > u) out.push_back({nodes_[u].id, nodes_[n.index].id, n.distance_m, n.rate_bps});
    }
  }
  return out;
}

bool operator==(const GatewayGraph& a, const GatewayGraph& b) {
  if (a.nodes_ != b.nodes_ || a.edge_count_ != b.edge_count_) return false;
  for (std::size_t i = 0; i < a.adjacency_.size(); ++i) {
    const auto& x = a.adjacency_[i];
    const auto& y = b.adjacency_[i];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].index != y[k].index || x[k].distance_m != y[k].distance_m || x[k].rate_bps != y[k].rate_bps) {
        return false;
      }
    }
  }
  return true;
}

GatewayGraph build_graph(const Dataset& d, const LinkProfile& profile) {
  profile.validate();
  const std::size_t n = d.points.size();
  std::vector<std::vector<GatewayGraph::Edge>> rows(n);

  // Rows are independent; merging them in row order keeps the edge list
  // identical for any thread count.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const auto& p = d.points[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
      const auto& q = d.points[j];
      const double dist = haversine_m(p, q);
      if (dist <= profile.max_range_m) {
        rows[static_cast<std::size_t>(i)].push_back({p.id, q.id, dist, link_rate(dist, profile)});
      }
    }
  }

  std::vector<GatewayGraph::Edge> edges;
  for (auto& row : rows) edges.insert(edges.end(), row.begin(), row.end());
  return GatewayGraph::from_edges(d.points, edges);
}

namespace {

/// Component label per node index; labels are assigned in order of each
/// component's smallest index.
std::vector<std::size_t> component_labels(const GatewayGraph& g, std::size_t& count) {
  constexpr std::size_t unset = GatewayGraph::npos;
  std::vector<std::size_t> label(g.size(), unset);
  count = 0;
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (label[s] != unset) continue;
    label[s] = count;
    queue.push_back(s);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const auto& nb : g.neighbors(u)) {
        if (label[nb.index] == unset) {
          label[nb.index] = count;
          queue.push_back(nb.index);
        }
      }
    }
    ++count;
  }
  return label;
}

}  // namespace

GatewayGraph largest_component(const GatewayGraph& g) {
  if (g.empty()) return g;
  std::size_t count = 0;
  const auto label = component_labels(g, count);
  std::vector<std::size_t> sizes(count, 0);
  for (auto l : label) ++sizes[l];
  // Labels follow smallest member index, so the first maximum wins ties.
  const auto best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  if (sizes[best] == g.size()) return g;

  std::vector<GeoPoint> nodes;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (label[i] == best) nodes.push_back(g.point(i));
  }
  std::vector<GatewayGraph::Edge> edges;
  for (const auto& e : g.edges()) {
    if (label[g.index_of(e.u)] == best) edges.push_back(e);
  }
  return GatewayGraph::from_edges(std::move(nodes), edges);
}

bool is_connected(const GatewayGraph& g) {
  if (g.empty()) return true;
  std::size_t count = 0;
  component_labels(g, count);
  return count == 1;
}

int HopMap::at(NodeId id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) throw UnknownNodeError(fmt::format("unknown gateway id {}", id));
  return hops[static_cast<std::size_t>(it - ids.begin())];
}

namespace kernels {

std::vector<int> bfs_hops(const GatewayGraph& g, std::size_t src) {
  std::vector<int> hops(g.size(), HopMap::kUnreachable);
  std::vector<std::size_t> queue;
  queue.reserve(g.size());
  hops[src] = 0;
  queue.push_back(src);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (const auto& nb : g.neighbors(u)) {
      if (hops[nb.index] == HopMap::kUnreachable) {
        hops[nb.index] = hops[u] + 1;
        queue.push_back(nb.index);
      }
    }
  }
  return hops;
}

std::vector<std::size_t> reachable_indices(const GatewayGraph& g, std::size_t src, unsigned max_hops) {
  std::vector<int> hops(g.size(), HopMap::kUnreachable);
  std::vector<std::size_t> queue;
  hops[src] = 0;
  queue.push_back(src);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    if (static_cast<unsigned>(hops[u]) == max_hops) continue;
    for (const auto& nb : g.neighbors(u)) {
      if (hops[nb.index] == HopMap::kUnreachable) {
        hops[nb.index] = hops[u] + 1;
        queue.push_back(nb.index);
      }
    }
  }
  std::vector<std::size_t> out(queue.begin() + 1, queue.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kernels

HopMap hop_distances(const GatewayGraph& g, NodeId src) {
  const std::size_t s = g.index_of(src);
  HopMap map;
  map.source = src;
  map.hops = kernels::bfs_hops(g, s);
  map.ids.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) map.ids.push_back(g.id(i));
  return map;
}

std::vector<NodeId> reachable_within(const GatewayGraph& g, NodeId node, unsigned max_hops) {
  const std::size_t s = g.index_of(node);
  std::vector<NodeId> out;
  for (auto idx : kernels::reachable_indices(g, s, max_hops)) out.push_back(g.id(idx));
  return out;
}

}  // namespace anonsat
