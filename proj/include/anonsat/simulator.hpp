#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "anonsat/graph.hpp"
#include "anonsat/link_model.hpp"
#include "anonsat/protocol.hpp"

namespace anonsat {

struct SimConfig {
  LinkProfile profile{"lora-subghz", 5000.0, 50000.0};
  ProtocolConfig protocol;
  std::uint32_t client_count = 1;
  double sim_duration_s = 3600.0;
  double wan_delay_s = 0.100;
  std::uint64_t payload_bytes = 200'000;
  std::uint64_t mtu_bytes = 1500;
  std::uint64_t syn_bytes = 40;
  std::uint64_t synack_bytes = 40;
  std::uint64_t ack_clienthello_bytes = 300;
  std::uint64_t serverhello_bytes = 1200;
  std::uint32_t runs = 30;
  std::uint64_t base_seed = 1;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

struct SessionRecord {
  std::uint32_t client = 0;
  std::uint32_t session = 0;  // per-client sequence number
  NodeId origin = 0;
  NodeId output = 0;
  unsigned hops = 0;
  double start_s = 0.0;
  std::optional<double> tls_delay_s;  // set once ServerHello reached the client
  std::optional<double> upload_s;     // set once the last byte reached the output
  std::uint64_t packets_delivered = 0;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

struct SimResult {
  std::uint64_t seed = 0;
  std::vector<SessionRecord> sessions;  // in session start order
  double mean_tls_s = 0.0;
  double median_tls_s = 0.0;
  double mean_upload_s = 0.0;
  double median_upload_s = 0.0;
  std::uint64_t completed_tls = 0;
  std::uint64_t completed_uploads = 0;
  std::uint64_t event_count = 0;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// One seeded run of the session workload on a connected graph: repeated
/// TLS-style handshakes followed by an MTU-segmented upload, store-and-forward
/// over FIFO links, until sim_duration_s.
SimResult run_simulation(const GatewayGraph& g, const SimConfig& cfg, std::uint64_t seed);

/// cfg.runs independent runs with seeds base_seed + i, in run order. Runs
/// execute in parallel; results do not depend on the thread count.
std::vector<SimResult> run_campaign(const GatewayGraph& g, const SimConfig& cfg);

/// Sequential reference for run_campaign.
std::vector<SimResult> run_campaign_serial(const GatewayGraph& g, const SimConfig& cfg);

}  // namespace anonsat
