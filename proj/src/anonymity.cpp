#include "anonsat/anonymity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anonsat/errors.hpp"

namespace anonsat {

namespace {

void require_pairs(const GatewayGraph& g) {
  if (g.size() < 2) throw DomainError("path metrics need at least two gateways");
}

}  // namespace

std::size_t anonymity_set(const GatewayGraph& g, NodeId out, unsigned max_hops) {
  return kernels::reachable_indices(g, g.index_of(out), max_hops).size();
}

double effective_set_from_counts(const std::vector<std::uint64_t>& counts) {
  // 2^H with H = log2(T) - (1/T) sum c log2 c, T = sum c.
  std::uint64_t total = 0;
  double weighted = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    total += c;
    const double x = static_cast<double>(c);
    weighted += x * std::log2(x);
  }
  if (total == 0) return 0.0;
  const double t = static_cast<double>(total);
  const double entropy = std::log2(t) - weighted / t;
  return std::exp2(entropy);
}

double effective_set(const GatewayGraph& g, NodeId out, unsigned max_hops) {
  // Path counts are symmetric, so one DFS from `out` yields every p_i.
  return effective_set_from_counts(kernels::path_counts_from(g, g.index_of(out), max_hops));
}

double node2node_paths_avg(const GatewayGraph& g, unsigned max_hops) {
  require_pairs(g);
  const std::size_t n = g.size();
  std::vector<std::uint64_t> partial(n, 0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
    const auto src = static_cast<std::size_t>(s);
    const auto counts = kernels::path_counts_from(g, src, max_hops);
    std::uint64_t sum = 0;
    for (std::size_t t = src + 1; t < n; ++t) sum += counts[t];
    partial[src] = sum;
  }
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

double unique_paths_avg(const GatewayGraph& g, unsigned max_hops) {
  require_pairs(g);
  const std::size_t n = g.size();
  std::vector<std::uint64_t> partial(n, 0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
    const auto src = static_cast<std::size_t>(s);
    std::uint64_t sum = 0;
    for (auto t : kernels::reachable_indices(g, src, max_hops)) {
      if (t > src) sum += kernels::disjoint_path_count(g, src, t, max_hops);
    }
    partial[src] = sum;
  }
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

MetricsReport full_report(const GatewayGraph& g, unsigned max_hops, const std::string& profile_name) {
  require_pairs(g);
  const std::size_t n = g.size();
  MetricsReport r;
  r.max_hops = max_hops;
  r.profile_name = profile_name;
  r.gateways.resize(n);
  std::vector<std::uint64_t> n2n(n, 0);
  std::vector<std::uint64_t> unique(n, 0);

  // Each iteration writes only its own slots; the reduction below runs in
  // index order, so the report is identical for every thread count.
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
    const auto src = static_cast<std::size_t>(s);
    const auto counts = kernels::path_counts_from(g, src, max_hops);
    auto& gm = r.gateways[src];
    gm.gateway = g.id(src);
    std::uint64_t paths = 0;
    std::uint64_t disjoint = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (counts[t] == 0) continue;
      ++gm.anonymity_set;
      if (t > src) {
        paths += counts[t];
        disjoint += kernels::disjoint_path_count(g, src, t, max_hops);
      }
    }
    gm.effective_set = effective_set_from_counts(counts);
    gm.effective_undefined = gm.anonymity_set == 0;
    n2n[src] = paths;
    unique[src] = disjoint;
  }

  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  double anon_sum = 0.0;
  double eff_sum = 0.0;
  std::uint64_t n2n_total = 0;
  std::uint64_t unique_total = 0;
  r.min_anonymity_set = std::numeric_limits<std::size_t>::max();
  r.min_effective_set = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& gm = r.gateways[i];
    anon_sum += static_cast<double>(gm.anonymity_set);
    eff_sum += gm.effective_set;
    r.min_anonymity_set = std::min(r.min_anonymity_set, gm.anonymity_set);
    r.min_effective_set = std::min(r.min_effective_set, gm.effective_set);
    n2n_total += n2n[i];
    unique_total += unique[i];
  }
  r.avg_anonymity_set = anon_sum / static_cast<double>(n);
  r.avg_effective_set = eff_sum / static_cast<double>(n);
  r.avg_node2node_paths = static_cast<double>(n2n_total) / pairs;
  r.avg_unique_paths = static_cast<double>(unique_total) / pairs;
  return r;
}

}  // namespace anonsat
