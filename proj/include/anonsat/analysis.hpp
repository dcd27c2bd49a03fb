#pragma once

#include <cstdint>
#include <vector>

#include "anonsat/graph.hpp"
#include "anonsat/protocol.hpp"

namespace anonsat {

struct DistanceEntry {
  unsigned max_hops = 0;
  double mean_m = 0.0;
  double stddev_m = 0.0;  // sample standard deviation
  double max_m = 0.0;     // largest single sample
  std::uint64_t samples = 0;

  double standard_error() const;

  friend bool operator==(const DistanceEntry&, const DistanceEntry&) = default;
};

struct DistanceStudy {
  std::uint64_t seed = 0;
  bool bias_enabled = false;
  std::vector<DistanceEntry> entries;

  friend bool operator==(const DistanceStudy&, const DistanceStudy&) = default;
};

/// Monte Carlo origin-to-output distance: each sample draws a uniform origin,
/// a fresh client bias (per cfg) and one output via the protocol selection.
/// cfg.max_hops is ignored in favor of `max_hops`.
DistanceEntry distance_to_origin(const GatewayGraph& g, unsigned max_hops, std::uint64_t samples,
                                 std::uint64_t seed, const ProtocolConfig& cfg);

/// One entry per max_hops value with seed + index; entries run in parallel.
DistanceStudy sweep(const GatewayGraph& g, const std::vector<unsigned>& max_hops_list,
                    std::uint64_t samples, std::uint64_t seed, const ProtocolConfig& cfg);

}  // namespace anonsat
