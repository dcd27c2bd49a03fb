// Serial per-pair metric implementations. Every value comes from an
// individual count_simple_paths or disjoint_paths call; no path tallies are
// shared between pairs.

#include <algorithm>
#include <cmath>
#include <limits>

#include "anonsat/anonymity.hpp"
#include "anonsat/errors.hpp"

namespace anonsat::reference {

double effective_set(const GatewayGraph& g, NodeId out, unsigned max_hops) {
  const auto reachable = reachable_within(g, out, max_hops);
  if (reachable.empty()) return 0.0;
  std::vector<double> counts;
  double total = 0.0;
  for (auto v : reachable) {
    counts.push_back(static_cast<double>(count_simple_paths(g, v, out, max_hops)));
    total += counts.back();
  }
  double entropy = 0.0;
  for (double c : counts) {
    const double p = c / total;
    entropy -= p * std::log2(p);
  }
  return std::pow(2.0, entropy);
}

double node2node_paths_avg(const GatewayGraph& g, unsigned max_hops) {
  if (g.size() < 2) throw DomainError("path metrics need at least two gateways");
  std::uint64_t total = 0;
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      total += count_simple_paths(g, g.id(i), g.id(j), max_hops);
      ++pairs;
    }
  }
  return static_cast<double>(total) / static_cast<double>(pairs);
}

double unique_paths_avg(const GatewayGraph& g, unsigned max_hops) {
  if (g.size() < 2) throw DomainError("path metrics need at least two gateways");
  std::uint64_t total = 0;
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      total += disjoint_paths(g, g.id(i), g.id(j), max_hops);
      ++pairs;
    }
  }
  return static_cast<double>(total) / static_cast<double>(pairs);
}

MetricsReport full_report(const GatewayGraph& g, unsigned max_hops, const std::string& profile_name) {
  if (g.size() < 2) throw DomainError("path metrics need at least two gateways");
  MetricsReport r;
  r.max_hops = max_hops;
  r.profile_name = profile_name;
  r.min_anonymity_set = std::numeric_limits<std::size_t>::max();
  r.min_effective_set = std::numeric_limits<double>::infinity();
  double anon_sum = 0.0;
  double eff_sum = 0.0;
  for (const auto& p : g.nodes()) {
    GatewayMetrics gm;
    gm.gateway = p.id;
    gm.anonymity_set = anonymity_set(g, p.id, max_hops);
    gm.effective_set = reference::effective_set(g, p.id, max_hops);
    gm.effective_undefined = gm.anonymity_set == 0;
    anon_sum += static_cast<double>(gm.anonymity_set);
    eff_sum += gm.effective_set;
    r.min_anonymity_set = std::min(r.min_anonymity_set, gm.anonymity_set);
    r.min_effective_set = std::min(r.min_effective_set, gm.effective_set);
    r.gateways.push_back(gm);
  }
  r.avg_anonymity_set = anon_sum / static_cast<double>(g.size());
  r.avg_effective_set = eff_sum / static_cast<double>(g.size());
  r.avg_node2node_paths = reference::node2node_paths_avg(g, max_hops);
  r.avg_unique_paths = reference::unique_paths_avg(g, max_hops);
  return r;
}

}  // namespace anonsat::reference
