#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anonsat/graph.hpp"

namespace anonsat {

struct GatewayMetrics {
  NodeId gateway = 0;
  std::size_t anonymity_set = 0;
  double effective_set = 0.0;
  bool effective_undefined = false;  // empty anonymity set, effective_set reported as 0

  friend bool operator==(const GatewayMetrics&, const GatewayMetrics&) = default;
};

/// One row of the anonymity table plus the per-gateway values behind it.
struct MetricsReport {
  unsigned max_hops = 0;
  std::string profile_name;
  std::vector<GatewayMetrics> gateways;  // ascending by id
  double avg_anonymity_set = 0.0;
  std::size_t min_anonymity_set = 0;
  double avg_effective_set = 0.0;
  double min_effective_set = 0.0;
  double avg_node2node_paths = 0.0;
  double avg_unique_paths = 0.0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Gateways within max_hops of `out`, excluding `out` itself.
std::size_t anonymity_set(const GatewayGraph& g, NodeId out, unsigned max_hops);

/// 2^H of the path-count distribution over the anonymity set of `out`, where
/// p_i is the share of simple paths (length <= max_hops) that start at
/// gateway i. Returns 0 when the anonymity set is empty.
double effective_set(const GatewayGraph& g, NodeId out, unsigned max_hops);

/// Effective set size from raw per-candidate path counts (zero counts ignored).
double effective_set_from_counts(const std::vector<std::uint64_t>& counts);

/// Mean simple-path count over unordered gateway pairs. Needs >= 2 nodes.
double node2node_paths_avg(const GatewayGraph& g, unsigned max_hops);

/// Mean greedy disjoint-path count over unordered pairs (smaller id as source).
double unique_paths_avg(const GatewayGraph& g, unsigned max_hops);

/// Parallel assembly of all per-gateway metrics and the six aggregates.
MetricsReport full_report(const GatewayGraph& g, unsigned max_hops, const std::string& profile_name);

/// Serial per-pair implementations built directly on count_simple_paths and
/// disjoint_paths. Kept as the reference the parallel kernels are tested and
/// benchmarked against.
namespace reference {

double effective_set(const GatewayGraph& g, NodeId out, unsigned max_hops);
double node2node_paths_avg(const GatewayGraph& g, unsigned max_hops);
double unique_paths_avg(const GatewayGraph& g, unsigned max_hops);
MetricsReport full_report(const GatewayGraph& g, unsigned max_hops, const std::string& profile_name);

}  // namespace reference

}  // namespace anonsat
