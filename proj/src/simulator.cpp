#include "anonsat/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <queue>

#include "anonsat/errors.hpp"

namespace anonsat {

void SimConfig::validate() const {
  profile.validate();
  protocol.validate();
  if (client_count < 1) throw ConfigError("simulation.client_count", "must be at least 1");
  if (!(sim_duration_s > 0.0)) throw ConfigError("simulation.sim_duration_s", "must be positive");
  if (!(wan_delay_s >= 0.0)) throw ConfigError("simulation.wan_delay_s", "must be non-negative");
  if (mtu_bytes == 0) throw ConfigError("simulation.mtu_bytes", "must be positive");
  if (runs < 1) throw ConfigError("simulation.runs", "must be at least 1");
}

namespace {

// Simulated time in integer nanoseconds: sums of configured delays stay exact.
using SimTime = std::int64_t;

SimTime to_ns(double seconds) { return static_cast<SimTime>(std::llround(seconds * 1e9)); }
double to_seconds(SimTime ns) { return static_cast<double>(ns) / 1e9; }

enum class EventKind { session_start, link_delivery, wan_reply_due, upload_packet_ready };

enum class Stage { syn, synack, ack_clienthello, serverhello, data };

struct Message {
  std::uint32_t client = 0;
  std::uint32_t session = 0;
  Stage stage = Stage::syn;
  std::uint64_t bytes = 0;
  bool outbound = true;  // origin -> output along the forward route
  std::size_t hop = 0;   // position of the current holder in the route
};

struct Event {
  SimTime time;
  std::uint64_t seq;
  EventKind kind;
  Message msg;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    return a.time != b.time ? a.time > b.time : a.seq > b.seq;
  }
};

struct ClientState {
  ClientRoutingState routing;
  Rng rng;
  std::uint32_t sessions_started = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t sessions_completed = 0;
  // Current session
  std::size_t record = 0;
  std::vector<std::size_t> forward;  // origin .. output
  std::vector<std::size_t> reverse;  // output .. origin
  SimTime syn_sent = 0;
  SimTime upload_started = 0;
  std::uint64_t packets_expected = 0;
};

/// Hop-shortest next-hop tables, built lazily per destination. The next hop
/// from u is the smallest-index neighbor one hop closer to the destination.
class Router {
 public:
  explicit Router(const GatewayGraph& g) : g_(g), tables_(g.size()) {}

  std::vector<std::size_t> route(std::size_t from, std::size_t to) {
    auto& next = table(to);
    std::vector<std::size_t> path{from};
    while (path.back() != to) {
      const std::size_t hop = next[path.back()];
      if (hop == GatewayGraph::npos) {
        throw Error(fmt::format("no route from gateway {} to {}", g_.id(from), g_.id(to)));
      }
      path.push_back(hop);
    }
    return path;
  }

 private:
  std::vector<std::size_t>& table(std::size_t dst) {
    auto& next = tables_[dst];
    if (!next.empty()) return next;
    const auto hops = kernels::bfs_hops(g_, dst);
    next.assign(g_.size(), GatewayGraph::npos);
    next[dst] = dst;
    for (std::size_t u = 0; u < g_.size(); ++u) {
      if (u == dst || hops[u] == HopMap::kUnreachable) continue;
      for (const auto& nb : g_.neighbors(u)) {
        if (hops[nb.index] == hops[u] - 1) {
          next[u] = nb.index;
          break;
        }
      }
    }
    return next;
  }

  const GatewayGraph& g_;
  std::vector<std::vector<std::size_t>> tables_;
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

class Simulation {
 public:
  Simulation(const GatewayGraph& g, const SimConfig& cfg, std::uint64_t seed)
      : g_(g), cfg_(cfg), router_(g), duration_(to_ns(cfg.sim_duration_s)), wan_delay_(to_ns(cfg.wan_delay_s)) {
    result_.seed = seed;
    busy_until_.resize(g.size());
    for (std::size_t u = 0; u < g.size(); ++u) {
      busy_until_[u].assign(g.degree(u), 0);
      for (const auto& nb : g.neighbors(u)) {
        if (!(nb.rate_bps > 0.0)) {
          throw ConfigError("profile.rate_bps", fmt::format("link {}-{} has zero rate", g.id(u), g.id(nb.index)));
        }
      }
    }

    Rng assignment(seed);
    clients_.reserve(cfg.client_count);
    for (std::uint32_t c = 0; c < cfg.client_count; ++c) {
      const auto origin = static_cast<std::size_t>(assignment.index(g.size()));
      Rng rng(mix_seed(seed, c));
      auto routing = init_client(g, g.id(origin), rng, cfg.protocol, c);
      clients_.push_back({std::move(routing), rng});
    }
    for (std::uint32_t c = 0; c < cfg.client_count; ++c) {
      schedule(0, EventKind::session_start, Message{c});
    }
  }

  SimResult run() {
    while (!queue_.empty() && queue_.top().time <= duration_) {
      const Event ev = queue_.top();
      queue_.pop();
      ++result_.event_count;
      now_ = ev.time;
      dispatch(ev);
    }
    summarize();
    return std::move(result_);
  }

 private:
  void schedule(SimTime at, EventKind kind, const Message& msg) { queue_.push({at, next_seq_++, kind, msg}); }

  void dispatch(const Event& ev) {
    switch (ev.kind) {
      case EventKind::session_start: start_session(ev.msg.client); break;
      case EventKind::link_delivery: arrive(ev.msg); break;
      case EventKind::wan_reply_due: reply(ev.msg); break;
      case EventKind::upload_packet_ready: arrive(ev.msg); break;
    }
  }

  void start_session(std::uint32_t c) {
    if (now_ >= duration_) return;
    auto& cl = clients_[c];
    if (cl.sessions_started > 0) {
      const RotationClock clock{to_seconds(now_), cl.messages_sent, cl.sessions_completed};
      maybe_rotate(cl.routing, clock, g_, cfg_.protocol, cl.rng);
    }
    const std::size_t origin = g_.index_of(cl.routing.origin);
    const std::size_t output = g_.index_of(cl.routing.current_output);
    cl.forward = router_.route(origin, output);
    cl.reverse = router_.route(output, origin);

    SessionRecord rec;
    rec.client = c;
    rec.session = cl.sessions_started++;
    rec.origin = cl.routing.origin;
    rec.output = cl.routing.current_output;
    rec.hops = static_cast<unsigned>(cl.forward.size() - 1);
    rec.start_s = to_seconds(now_);
    cl.record = result_.sessions.size();
    result_.sessions.push_back(rec);

    cl.syn_sent = now_;
    send_out(c, Stage::syn, cfg_.syn_bytes);
  }

  void send_out(std::uint32_t c, Stage stage, std::uint64_t bytes) {
    ++clients_[c].messages_sent;
    arrive(Message{c, clients_[c].sessions_started - 1, stage, bytes, true, 0});
  }

  const std::vector<std::size_t>& route_of(const Message& m) const {
    return m.outbound ? clients_[m.client].forward : clients_[m.client].reverse;
  }

  // The message is held by route[hop]: either hand it to the endpoint or
  // queue it on the next link.
  void arrive(const Message& m) {
    const auto& route = route_of(m);
    if (m.hop + 1 == route.size()) {
      at_endpoint(m);
      return;
    }
    const std::size_t u = route[m.hop];
    const std::size_t v = route[m.hop + 1];
    const std::size_t slot = g_.slot_of(u, v);
    const double rate = g_.neighbors(u)[slot].rate_bps;
    SimTime& busy = busy_until_[u][slot];
    const SimTime start = std::max(now_, busy);
    busy = start + to_ns(static_cast<double>(m.bytes) * 8.0 / rate);
    Message next = m;
    next.hop += 1;
    schedule(busy, EventKind::link_delivery, next);
  }

  void at_endpoint(const Message& m) {
    auto& cl = clients_[m.client];
    auto& rec = result_.sessions[cl.record];
    switch (m.stage) {
      case Stage::syn:
      case Stage::ack_clienthello:
        schedule(now_ + wan_delay_, EventKind::wan_reply_due, m);
        break;
      case Stage::synack:
        send_out(m.client, Stage::ack_clienthello, cfg_.ack_clienthello_bytes);
        break;
      case Stage::serverhello:
        rec.tls_delay_s = to_seconds(now_ - cl.syn_sent);
        start_upload(m.client);
        break;
      case Stage::data:
        ++rec.packets_delivered;
        if (rec.packets_delivered == cl.packets_expected) finish_session(m.client);
        break;
    }
  }

  void reply(const Message& m) {
    const Stage stage = m.stage == Stage::syn ? Stage::synack : Stage::serverhello;
    const std::uint64_t bytes = stage == Stage::synack ? cfg_.synack_bytes : cfg_.serverhello_bytes;
    arrive(Message{m.client, m.session, stage, bytes, false, 0});
  }

  void start_upload(std::uint32_t c) {
    auto& cl = clients_[c];
    cl.upload_started = now_;
    const std::uint64_t mtu = cfg_.mtu_bytes;
    cl.packets_expected = (cfg_.payload_bytes + mtu - 1) / mtu;
    if (cl.packets_expected == 0) {
      finish_session(c);
      return;
    }
    std::uint64_t remaining = cfg_.payload_bytes;
    for (std::uint64_t i = 0; i < cl.packets_expected; ++i) {
      const std::uint64_t bytes = std::min(remaining, mtu);
      remaining -= bytes;
      ++cl.messages_sent;
      schedule(now_, EventKind::upload_packet_ready, Message{c, cl.sessions_started - 1, Stage::data, bytes, true, 0});
    }
  }

  void finish_session(std::uint32_t c) {
    auto& cl = clients_[c];
    result_.sessions[cl.record].upload_s = to_seconds(now_ - cl.upload_started);
    ++cl.sessions_completed;
    schedule(now_, EventKind::session_start, Message{c});
  }

  void summarize() {
    std::vector<double> tls;
    std::vector<double> up;
    for (const auto& s : result_.sessions) {
      if (s.tls_delay_s) tls.push_back(*s.tls_delay_s);
      if (s.upload_s) up.push_back(*s.upload_s);
    }
    result_.completed_tls = tls.size();
    result_.completed_uploads = up.size();
    result_.mean_tls_s = mean(tls);
    result_.median_tls_s = median(tls);
    result_.mean_upload_s = mean(up);
    result_.median_upload_s = median(up);
  }

  const GatewayGraph& g_;
  const SimConfig& cfg_;
  Router router_;
  SimTime duration_;
  SimTime wan_delay_;
  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::vector<std::vector<SimTime>> busy_until_;  // per directed link, aligned with adjacency
  std::vector<ClientState> clients_;
  SimResult result_;
};

}  // namespace

SimResult run_simulation(const GatewayGraph& g, const SimConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (g.empty()) throw Error("cannot simulate on an empty graph");
  return Simulation(g, cfg, seed).run();
}

std::vector<SimResult> run_campaign(const GatewayGraph& g, const SimConfig& cfg) {
  cfg.validate();
  std::vector<SimResult> results(cfg.runs);
  std::vector<std::exception_ptr> errors(cfg.runs);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(cfg.runs); ++i) {
    const auto run = static_cast<std::size_t>(i);
    try {
      results[run] = run_simulation(g, cfg, cfg.base_seed + run);
    } catch (...) {
      errors[run] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::vector<SimResult> run_campaign_serial(const GatewayGraph& g, const SimConfig& cfg) {
  cfg.validate();
  std::vector<SimResult> results;
  results.reserve(cfg.runs);
  for (std::uint32_t i = 0; i < cfg.runs; ++i) results.push_back(run_simulation(g, cfg, cfg.base_seed + i));
  return results;
}

}  // namespace anonsat
