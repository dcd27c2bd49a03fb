#include "anonsat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "anonsat/errors.hpp"

namespace anonsat {

double DistanceEntry::standard_error() const {
  return samples > 0 ? stddev_m / std::sqrt(static_cast<double>(samples)) : 0.0;
}

DistanceEntry distance_to_origin(const GatewayGraph& g, unsigned max_hops, std::uint64_t samples,
                                 std::uint64_t seed, const ProtocolConfig& cfg) {
  if (g.empty()) throw DomainError("distance study needs a non-empty graph");
  if (samples < 1) throw DomainError("distance study needs at least one sample");

  Rng rng(seed);
  std::vector<std::vector<std::size_t>> candidates(g.size());  // per origin, filled lazily
  DistanceEntry e;
  e.max_hops = max_hops;
  e.samples = samples;

  // Welford running mean and variance.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto origin = static_cast<std::size_t>(rng.index(g.size()));
    const BiasParams bias = draw_bias(rng, cfg);
    auto& cand = candidates[origin];
    if (cand.empty()) {
      cand = kernels::reachable_indices(g, origin, max_hops);
      cand.insert(std::upper_bound(cand.begin(), cand.end(), origin), origin);
    }
    const OutputSelector selector(g, origin, bias, cand);
    const std::size_t output = selector.draw(rng);
    const double d = output == origin ? 0.0 : haversine_m(g.point(origin), g.point(output));

    e.max_m = std::max(e.max_m, d);
    const double delta = d - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (d - mean);
  }
  e.mean_m = mean;
  e.stddev_m = samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1)) : 0.0;
  return e;
}

DistanceStudy sweep(const GatewayGraph& g, const std::vector<unsigned>& max_hops_list, std::uint64_t samples,
                    std::uint64_t seed, const ProtocolConfig& cfg) {
  if (max_hops_list.empty()) throw DomainError("max_hops list is empty");
  DistanceStudy study;
  study.seed = seed;
  study.bias_enabled = cfg.bias_enabled;
  study.entries.resize(max_hops_list.size());
  std::vector<std::exception_ptr> errors(max_hops_list.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(max_hops_list.size()); ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      study.entries[k] = distance_to_origin(g, max_hops_list[k], samples, seed + k, cfg);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return study;
}

}  // namespace anonsat
