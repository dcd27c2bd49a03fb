#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "anonsat/analysis.hpp"
#include "anonsat/anonymity.hpp"
#include "anonsat/simulator.hpp"

namespace anonsat {

/// Fixed 6-decimal rendering used by every CSV writer.
std::string fixed6(double v);

nlohmann::ordered_json to_json(const MetricsReport& r, bool per_gateway);
nlohmann::ordered_json to_json(const SimResult& r, std::size_t run);
nlohmann::ordered_json to_json(const DistanceStudy& s);

/// Header plus one row: avg_anon,min_anon,avg_eff,min_eff,avg_n2n,avg_unique.
void write_metrics_csv(std::ostream& out, const MetricsReport& r);
void write_gateway_metrics_csv(std::ostream& out, const MetricsReport& r);

/// max_hops,mean_m,stddev_m,n
void write_distance_csv(std::ostream& out, const DistanceStudy& s);

struct CampaignRun {
  std::uint32_t client_count;
  std::vector<SimResult> results;
};

/// client_count,run,seed,client,session,origin,output,hops,start_s,tls_delay_s,upload_s
void write_sessions_csv(std::ostream& out, const std::vector<CampaignRun>& campaigns);
/// client_count,run,seed,sessions,mean_tls_s,median_tls_s,mean_upload_s,median_upload_s,events
void write_runs_csv(std::ostream& out, const std::vector<CampaignRun>& campaigns);

}  // namespace anonsat
