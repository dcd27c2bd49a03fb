#include "anonsat/export.hpp"

#include <fmt/format.h>
#include <ostream>

namespace anonsat {

std::string fixed6(double v) { return fmt::format("{:.6f}", v); }

namespace {

nlohmann::ordered_json optional_seconds(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string optional_csv(const std::optional<double>& v) { return v ? fixed6(*v) : std::string(); }

}  // namespace

nlohmann::ordered_json to_json(const MetricsReport& r, bool per_gateway) {
  nlohmann::ordered_json j;
  j["profile"] = r.profile_name;
  j["max_hops"] = r.max_hops;
  j["gateways"] = r.gateways.size();
  j["avg_anon"] = r.avg_anonymity_set;
  j["min_anon"] = r.min_anonymity_set;
  j["avg_eff"] = r.avg_effective_set;
  j["min_eff"] = r.min_effective_set;
  j["avg_n2n"] = r.avg_node2node_paths;
  j["avg_unique"] = r.avg_unique_paths;
  if (per_gateway) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& gm : r.gateways) {
      nlohmann::ordered_json row;
      row["gateway"] = gm.gateway;
      row["anonymity_set"] = gm.anonymity_set;
      row["effective_set"] = gm.effective_set;
      if (gm.effective_undefined) row["effective_undefined"] = true;
      rows.push_back(std::move(row));
    }
    j["per_gateway"] = std::move(rows);
  }
  return j;
}

nlohmann::ordered_json to_json(const SimResult& r, std::size_t run) {
  nlohmann::ordered_json j;
  j["run"] = run;
  j["seed"] = r.seed;
  j["mean_tls_s"] = r.mean_tls_s;
  j["median_tls_s"] = r.median_tls_s;
  j["mean_upload_s"] = r.mean_upload_s;
  j["median_upload_s"] = r.median_upload_s;
  j["completed_tls"] = r.completed_tls;
  j["completed_uploads"] = r.completed_uploads;
  j["events"] = r.event_count;
  auto sessions = nlohmann::ordered_json::array();
  for (const auto& s : r.sessions) {
    nlohmann::ordered_json row;
    row["client"] = s.client;
    row["origin"] = s.origin;
    row["output"] = s.output;
    row["hops"] = s.hops;
    row["tls_delay_s"] = optional_seconds(s.tls_delay_s);
    row["upload_s"] = optional_seconds(s.upload_s);
    sessions.push_back(std::move(row));
  }
  j["sessions"] = std::move(sessions);
  return j;
}

nlohmann::ordered_json to_json(const DistanceStudy& s) {
  nlohmann::ordered_json j;
  j["seed"] = s.seed;
  j["bias_enabled"] = s.bias_enabled;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"max_hops", e.max_hops}, {"mean_m", e.mean_m}, {"stddev_m", e.stddev_m}, {"n", e.samples}});
  }
  j["entries"] = std::move(entries);
  return j;
}

void write_metrics_csv(std::ostream& out, const MetricsReport& r) {
  out << "avg_anon,min_anon,avg_eff,min_eff,avg_n2n,avg_unique\n";
  out << fixed6(r.avg_anonymity_set) << ',' << r.min_anonymity_set << ',' << fixed6(r.avg_effective_set) << ','
      << fixed6(r.min_effective_set) << ',' << fixed6(r.avg_node2node_paths) << ',' << fixed6(r.avg_unique_paths)
      << '\n';
}

void write_gateway_metrics_csv(std::ostream& out, const MetricsReport& r) {
  out << "gateway,anonymity_set,effective_set\n";
  for (const auto& gm : r.gateways) {
    out << gm.gateway << ',' << gm.anonymity_set << ',' << fixed6(gm.effective_set) << '\n';
  }
}

void write_distance_csv(std::ostream& out, const DistanceStudy& s) {
  out << "max_hops,mean_m,stddev_m,n\n";
  for (const auto& e : s.entries) {
    out << e.max_hops << ',' << fixed6(e.mean_m) << ',' << fixed6(e.stddev_m) << ',' << e.samples << '\n';
  }
}

void write_sessions_csv(std::ostream& out, const std::vector<CampaignRun>& campaigns) {
  out << "client_count,run,seed,client,session,origin,output,hops,start_s,tls_delay_s,upload_s\n";
  for (const auto& c : campaigns) {
    for (std::size_t run = 0; run < c.results.size(); ++run) {
      const auto& r = c.results[run];
      for (const auto& s : r.sessions) {
        out << c.client_count << ',' << run << ',' << r.seed << ',' << s.client << ',' << s.session << ','
            << s.origin << ',' << s.output << ',' << s.hops << ',' << fixed6(s.start_s) << ','
            << optional_csv(s.tls_delay_s) << ',' << optional_csv(s.upload_s) << '\n';
      }
    }
  }
}

void write_runs_csv(std::ostream& out, const std::vector<CampaignRun>& campaigns) {
  out << "client_count,run,seed,sessions,mean_tls_s,median_tls_s,mean_upload_s,median_upload_s,events\n";
  for (const auto& c : campaigns) {
    for (std::size_t run = 0; run < c.results.size(); ++run) {
      const auto& r = c.results[run];
      out << c.client_count << ',' << run << ',' << r.seed << ',' << r.sessions.size() << ','
          << fixed6(r.mean_tls_s) << ',' << fixed6(r.median_tls_s) << ',' << fixed6(r.mean_upload_s) << ','
          << fixed6(r.median_upload_s) << ',' << r.event_count << '\n';
    }
  }
}

}  // namespace anonsat
