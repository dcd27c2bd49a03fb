#include "anonsat/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anonsat/errors.hpp"

namespace anonsat {

TimeoutMode parse_timeout_mode(const std::string& s) {
  if (s == "time") return TimeoutMode::time;
  if (s == "messages") return TimeoutMode::messages;
  if (s == "per_session") return TimeoutMode::per_session;
  throw ConfigError("protocol.timeout_mode", "expected time, messages or per_session, got '" + s + "'");
}

std::string to_string(TimeoutMode mode) {
  switch (mode) {
    case TimeoutMode::time: return "time";
    case TimeoutMode::messages: return "messages";
    case TimeoutMode::per_session: return "per_session";
  }
  return "unknown";
}

void ProtocolConfig::validate() const {
  if (timeout_mode != TimeoutMode::per_session && !(gateway_timeout > 0.0)) {
    throw ConfigError("protocol.gateway_timeout_s", "must be positive");
  }
  if (!(weight_min >= 0.0)) throw ConfigError("protocol.weight_min", "must be non-negative");
  if (!(weight_max >= weight_min)) throw ConfigError("protocol.weight_max", "must be >= protocol.weight_min");
}

double candidate_weight(const GeoPoint& origin, const GeoPoint& candidate, const BiasParams& bias) {
  if (bias.weight == 0.0) return 1.0;
  if (origin.lat == candidate.lat && origin.lon == candidate.lon) return 1.0;
  return std::exp(bias.weight * std::cos(bearing(origin, candidate) - bias.direction));
}

OutputSelector::OutputSelector(const GatewayGraph& g, std::size_t origin, const BiasParams& bias,
                               unsigned max_hops)
    : OutputSelector(g, origin, bias, [&] {
        auto c = kernels::reachable_indices(g, origin, max_hops);
        c.insert(std::upper_bound(c.begin(), c.end(), origin), origin);
        return c;
      }()) {}

OutputSelector::OutputSelector(const GatewayGraph& g, std::size_t origin, const BiasParams& bias,
                               std::vector<std::size_t> candidates)
    : candidates_(std::move(candidates)) {
  cumulative_.reserve(candidates_.size());
  double total = 0.0;
  for (auto c : candidates_) {
    total += c == origin ? 1.0 : candidate_weight(g.point(origin), g.point(c), bias);
    cumulative_.push_back(total);
  }
}

std::vector<double> OutputSelector::probabilities() const {
  std::vector<double> p(cumulative_.size());
  if (cumulative_.empty()) return p;
  const double total = cumulative_.back();
  double prev = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = (cumulative_[i] - prev) / total;
    prev = cumulative_[i];
  }
  return p;
}

std::size_t OutputSelector::draw(Rng& rng) const {
  const double u = rng.uniform01() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return candidates_[static_cast<std::size_t>(it - cumulative_.begin())];
}

namespace {

double next_deadline(const ProtocolConfig& cfg, const RotationClock& clock) {
  switch (cfg.timeout_mode) {
    case TimeoutMode::time: return clock.now + cfg.gateway_timeout;
    case TimeoutMode::messages: return static_cast<double>(clock.messages_sent) + cfg.gateway_timeout;
    case TimeoutMode::per_session: return static_cast<double>(clock.sessions_completed) + 1.0;
  }
  return 0.0;
}

bool deadline_reached(const ProtocolConfig& cfg, const RotationClock& clock, double deadline) {
  switch (cfg.timeout_mode) {
    case TimeoutMode::time: return clock.now >= deadline;
    case TimeoutMode::messages: return static_cast<double>(clock.messages_sent) >= deadline;
    case TimeoutMode::per_session: return static_cast<double>(clock.sessions_completed) >= deadline;
  }
  return false;
}

}  // namespace

BiasParams draw_bias(Rng& rng, const ProtocolConfig& cfg) {
  BiasParams bias;
  bias.direction = rng.uniform01() * 2.0 * std::numbers::pi;
  const double weight = rng.uniform(cfg.weight_min, cfg.weight_max);
  bias.weight = cfg.bias_enabled ? weight : 0.0;
  return bias;
}

ClientRoutingState init_client(const GatewayGraph& g, NodeId origin, Rng& rng, const ProtocolConfig& cfg,
                               std::uint32_t client, const RotationClock& clock) {
  const std::size_t o = g.index_of(origin);
  ClientRoutingState state;
  state.client = client;
  state.origin = origin;
  state.bias = draw_bias(rng, cfg);
  state.selector = OutputSelector(g, o, state.bias, cfg.max_hops);
  state.current_output = g.id(state.selector.draw(rng));
  state.rotation_deadline = next_deadline(cfg, clock);
  return state;
}

std::vector<NodeId> candidate_set(const GatewayGraph& g, NodeId origin, unsigned max_hops) {
  auto out = reachable_within(g, origin, max_hops);
  out.insert(std::upper_bound(out.begin(), out.end(), origin), origin);
  return out;
}

NodeId select_output(const GatewayGraph& g, const ClientRoutingState& state, const ProtocolConfig& cfg, Rng& rng) {
  const OutputSelector selector(g, g.index_of(state.origin), state.bias, cfg.max_hops);
  return g.id(selector.draw(rng));
}

bool maybe_rotate(ClientRoutingState& state, const RotationClock& clock, const GatewayGraph& g,
                  const ProtocolConfig& cfg, Rng& rng) {
  if (!deadline_reached(cfg, clock, state.rotation_deadline)) return false;
  if (state.selector.candidates().empty()) {
    state.selector = OutputSelector(g, g.index_of(state.origin), state.bias, cfg.max_hops);
  }
  state.current_output = g.id(state.selector.draw(rng));
  state.rotation_deadline = next_deadline(cfg, clock);
  return true;
}

}  // namespace anonsat
