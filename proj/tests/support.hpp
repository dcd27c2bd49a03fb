#pragma once

// Graph fixtures and brute-force oracles shared by the unit and acceptance
// suites. The oracles only use the adjacency structure and never call the
// library's path kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "anonsat/geo.hpp"
#include "anonsat/graph.hpp"
#include "anonsat/rng.hpp"

namespace anonsat::testing {

inline constexpr double kMetersPerDegree = kEarthRadiusM * 3.14159265358979323846 / 180.0;

/// Point `east_m` / `north_m` meters from (0, 0) (equatorial approximation).
inline GeoPoint at_meters(double east_m, double north_m, NodeId id) {
  return {north_m / kMetersPerDegree, east_m / kMetersPerDegree, id};
}

/// Graph with the given undirected edges; node i sits 1 m east per id,
/// every edge has unit distance and rate 1 bps.
inline GatewayGraph topology(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<GeoPoint> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(at_meters(static_cast<double>(i), 0.0, static_cast<NodeId>(i)));
  std::vector<GatewayGraph::Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1.0, 1.0});
  return GatewayGraph::from_edges(std::move(nodes), edges);
}

inline GatewayGraph path_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return topology(n, e);
}

inline GatewayGraph cycle_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  return topology(n, e);
}

inline GatewayGraph complete_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  return topology(n, e);
}

/// Star with center 0 and leaves 1..leaves.
inline GatewayGraph star_graph(std::size_t leaves) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, static_cast<NodeId>(i));
  return topology(leaves + 1, e);
}

/// Erdos-Renyi G(n, p).
inline GatewayGraph random_graph(std::size_t n, double p, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform01() < p) e.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  return topology(n, e);
}

/// Dense adjacency matrix by node index.
inline std::vector<std::vector<char>> adjacency_matrix(const GatewayGraph& g) {
  std::vector<std::vector<char>> m(g.size(), std::vector<char>(g.size(), 0));
  for (const auto& e : g.edges()) {
    const auto u = g.index_of(e.u);
    const auto v = g.index_of(e.v);
    m[u][v] = m[v][u] = 1;
  }
  return m;
}

/// Every simple path s -> t with at most max_len edges, found by trying every
/// ordered selection of distinct intermediate vertices. Exponential; n <= 8.
inline std::vector<std::vector<std::size_t>> brute_force_paths(const GatewayGraph& g, std::size_t s, std::size_t t,
                                                                unsigned max_len) {
  const auto adj = adjacency_matrix(g);
  std::vector<std::size_t> others;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (v != s && v != t) others.push_back(v);

  std::vector<std::vector<std::size_t>> out;
  const std::size_t m = others.size();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<std::size_t> mid;
    for (std::size_t k = 0; k < m; ++k)
      if (mask & (1u << k)) mid.push_back(others[k]);
    if (mid.size() + 1 > max_len) continue;
    std::sort(mid.begin(), mid.end());
    do {
      std::vector<std::size_t> path{s};
      path.insert(path.end(), mid.begin(), mid.end());
      path.push_back(t);
      bool ok = true;
      for (std::size_t i = 0; i + 1 < path.size() && ok; ++i) ok = adj[path[i]][path[i + 1]] != 0;
      if (ok) out.push_back(std::move(path));
    } while (std::next_permutation(mid.begin(), mid.end()));
  }
  return out;
}

inline std::uint64_t brute_force_count(const GatewayGraph& g, std::size_t s, std::size_t t, unsigned max_len) {
  return brute_force_paths(g, s, t, max_len).size();
}

/// 2^(-sum p log2 p) over gateways with at least one path to `out`.
inline double brute_force_effective_set(const GatewayGraph& g, std::size_t out, unsigned max_hops) {
  std::vector<double> counts;
  double total = 0.0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (v == out) continue;
    const auto c = static_cast<double>(brute_force_count(g, v, out, max_hops));
    if (c > 0) {
      counts.push_back(c);
      total += c;
    }
  }
  if (counts.empty()) return 0.0;
  double h = 0.0;
  for (double c : counts) h -= (c / total) * std::log2(c / total);
  return std::pow(2.0, h);
}

}  // namespace anonsat::testing
