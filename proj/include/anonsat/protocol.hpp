#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "anonsat/graph.hpp"
#include "anonsat/rng.hpp"

namespace anonsat {

enum class TimeoutMode { time, messages, per_session };

TimeoutMode parse_timeout_mode(const std::string& s);
std::string to_string(TimeoutMode mode);

struct ProtocolConfig {
  unsigned max_hops = 3;
  /// Seconds in `time` mode, a message count in `messages` mode, unused per session.
  double gateway_timeout = 60.0;
  TimeoutMode timeout_mode = TimeoutMode::per_session;
  bool bias_enabled = true;
  double weight_min = 0.0;
  double weight_max = 3.0;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Per-client directional preference. Fixed for the client's lifetime.
struct BiasParams {
  double direction = 0.0;  // radians, [0, 2pi), 0 = north
  double weight = 0.0;     // concentration, 0 = uniform

  friend bool operator==(const BiasParams&, const BiasParams&) = default;
};

/// Candidate outputs of one origin with their biased selection weights.
/// Building it costs one truncated BFS; drawing is a binary search.
class OutputSelector {
 public:
  OutputSelector() = default;
  OutputSelector(const GatewayGraph& g, std::size_t origin, const BiasParams& bias, unsigned max_hops);
  /// Reuses a precomputed candidate list (ascending, containing the origin).
  OutputSelector(const GatewayGraph& g, std::size_t origin, const BiasParams& bias,
                 std::vector<std::size_t> candidates);

  /// Candidate indices, ascending; always contains the origin.
  const std::vector<std::size_t>& candidates() const { return candidates_; }
  /// Normalized selection probabilities, parallel to candidates().
  std::vector<double> probabilities() const;

  std::size_t draw(Rng& rng) const;

 private:
  std::vector<std::size_t> candidates_;
  std::vector<double> cumulative_;
};

/// Unnormalized weight of a candidate: exp(weight * cos(bearing - direction)),
/// or 1 for the origin itself and for candidates co-located with it.
double candidate_weight(const GeoPoint& origin, const GeoPoint& candidate, const BiasParams& bias);

/// Direction uniform in [0, 2pi), weight uniform in [weight_min, weight_max]
/// (forced to 0 with the bias disabled). Always consumes two draws.
BiasParams draw_bias(Rng& rng, const ProtocolConfig& cfg);

struct ClientRoutingState {
  std::uint32_t client = 0;
  NodeId origin = 0;
  BiasParams bias;
  NodeId current_output = 0;
  /// Next rotation point, in the unit of the timeout mode (seconds, messages
  /// sent, or sessions completed).
  double rotation_deadline = 0.0;
  OutputSelector selector;
};

/// Monotone counters a rotation decision is made against.
struct RotationClock {
  double now = 0.0;
  std::uint64_t messages_sent = 0;
  std::uint64_t sessions_completed = 0;
};

/// Draws the client's bias and first output. Throws UnknownNodeError.
ClientRoutingState init_client(const GatewayGraph& g, NodeId origin, Rng& rng, const ProtocolConfig& cfg,
                               std::uint32_t client = 0, const RotationClock& clock = {});

/// reachable_within(origin, max_hops) plus the origin, ascending by id.
std::vector<NodeId> candidate_set(const GatewayGraph& g, NodeId origin, unsigned max_hops);

/// Biased random draw over candidate_set(state.origin, cfg.max_hops).
NodeId select_output(const GatewayGraph& g, const ClientRoutingState& state, const ProtocolConfig& cfg, Rng& rng);

/// Re-draws the output once the deadline has been reached (inclusive); the
/// bias is kept. Returns whether a rotation happened.
bool maybe_rotate(ClientRoutingState& state, const RotationClock& clock, const GatewayGraph& g,
                  const ProtocolConfig& cfg, Rng& rng);

}  // namespace anonsat
