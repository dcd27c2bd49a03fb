#include "commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <sstream>

#include "anonsat/analysis.hpp"
#include "anonsat/anonymity.hpp"
#include "anonsat/config.hpp"
#include "anonsat/errors.hpp"
#include "anonsat/export.hpp"
#include "anonsat/geo.hpp"
#include "anonsat/graph.hpp"
#include "anonsat/simulator.hpp"
#include "manifest.hpp"

namespace anonsat::cli {

namespace {

struct CommonOptions {
  std::string config_path;
  std::string profile;
  std::optional<unsigned> max_hops;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool stamp = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_seed, bool with_hops) {
  cmd->add_option("--config", o.config_path, "Key-value config file (section.key = value)");
  cmd->add_option("--profile", o.profile, "Built-in link profile: lora-subghz, dash7, lora24-ltem1, ltem2");
  if (with_hops) cmd->add_option("--max-hops", o.max_hops, "Upper bound on origin-output hop distance");
  if (with_seed) cmd->add_option("--seed", o.seed, "Base random seed");
  cmd->add_option("--out", o.out, "Output file (stdout when omitted)");
  cmd->add_flag("--stamp", o.stamp, "Record a wall-clock timestamp in the manifest");
}

KeyValueConfig load_config(const CommonOptions& o) {
  return o.config_path.empty() ? KeyValueConfig{} : KeyValueConfig::load(o.config_path);
}

LinkProfile resolve_profile(const KeyValueConfig& cfg, const CommonOptions& o) {
  LinkProfile profile = builtin_profiles().front();
  apply(cfg, profile);
  if (!o.profile.empty()) {
    auto builtin = find_builtin_profile(o.profile);
    if (!builtin) throw ConfigError("--profile", "unknown profile '" + o.profile + "'");
    profile = *builtin;
  }
  return profile;
}

unsigned resolve_max_hops(const KeyValueConfig& cfg, const CommonOptions& o, const LinkProfile& profile) {
  if (o.max_hops) return *o.max_hops;
  if (cfg.has("protocol.max_hops")) return static_cast<unsigned>(cfg.get_uint("protocol.max_hops"));
  return default_max_hops(profile);
}

Dataset read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  return parse_dataset(in, std::filesystem::path(path).stem().string());
}

GatewayGraph connected_graph(const Dataset& d, const LinkProfile& profile) {
  auto g = build_graph(d, profile);
  if (!is_connected(g)) {
    const auto cc = largest_component(g);
    std::cerr << fmt::format("warning: graph is disconnected; using its largest component ({} of {} gateways)\n",
                             cc.size(), g.size());
    return cc;
  }
  return g;
}

RunManifest make_manifest(const std::string& command, const CommonOptions& o, const std::string& dataset) {
  RunManifest m;
  m.command = command;
  m.config_path = o.config_path;
  if (!dataset.empty()) {
    m.dataset_path = dataset;
    m.dataset_sha256 = sha256_file(dataset);
  }
  if (o.stamp) m.timestamp = utc_timestamp();
  return m;
}

// JSON results embed the manifest; CSV results reference a sidecar file.
void emit_json(const CommonOptions& o, nlohmann::ordered_json body) {
  const std::string text = body.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream(o.out, std::ios::binary) << text;
}

void emit_csv(const CommonOptions& o, const RunManifest& m, const std::string& csv) {
  if (o.out.empty()) {
    std::cout << csv;
    return;
  }
  const std::string sidecar = o.out + ".manifest.json";
  std::ofstream(sidecar, std::ios::binary) << m.to_json().dump(2) << "\n";
  std::ofstream(o.out, std::ios::binary) << "# manifest: " << std::filesystem::path(sidecar).filename().string()
                                         << "\n"
                                         << csv;
}

std::vector<unsigned> parse_uint_list(const std::string& s, const std::string& flag) {
  std::vector<unsigned> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw ConfigError(flag, "expected a comma-separated list of non-negative integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw ConfigError(flag, "list is empty");
  return out;
}

// --- generate -------------------------------------------------------------

struct GenerateOptions {
  CommonOptions common;
  std::string kind;
  std::size_t n = 0;
  double extent_m = 10'000.0;
};

void cmd_generate(const GenerateOptions& o) {
  const auto kind = parse_layout_kind(o.kind);
  const std::uint64_t seed = o.common.seed.value_or(1);
  const auto d = generate_synthetic(kind, o.n, o.extent_m, seed);

  auto m = make_manifest("generate", o.common, "");
  m.parameters = {{"kind", o.kind}, {"n", std::to_string(o.n)}, {"extent_m", fmt::format("{}", o.extent_m)}};
  m.seeds = {seed};
  std::ostringstream csv;
  write_dataset(csv, d);
  emit_csv(o.common, m, csv.str());
}

// --- preprocess -----------------------------------------------------------

struct PreprocessOptions {
  CommonOptions common;
  std::string input;
  std::optional<double> min_sep_m;
};

void cmd_preprocess(const PreprocessOptions& o) {
  const auto cfg = load_config(o.common);
  const auto profile = resolve_profile(cfg, o.common);
  double min_sep = cfg.has("geodata.min_sep_m") ? cfg.get_double("geodata.min_sep_m") : 200.0;
  if (o.min_sep_m) min_sep = *o.min_sep_m;
  if (min_sep < 0.0) throw ConfigError("--min-sep", "must be non-negative");

  const auto raw = read_dataset(o.input);
  const auto close = filter_close(raw, min_sep);
  const auto cc = largest_component(build_graph(close, profile));

  Dataset kept{close.name, cc.nodes()};
  if (kept.empty()) std::cerr << "warning: preprocessing left no gateways\n";

  std::cerr << fmt::format("{:<20} {:>8} {:>8} {:>8}\n", "dataset", "total", "close", "cc");
  std::cerr << fmt::format("{:<20} {:>8} {:>8} {:>8}\n", raw.name, raw.size(), close.size(), kept.size());

  auto m = make_manifest("preprocess", o.common, o.input);
  m.parameters = to_key_values(profile);
  m.parameters["geodata.min_sep_m"] = fmt::format("{}", min_sep);
  m.parameters["summary.total"] = std::to_string(raw.size());
  m.parameters["summary.close"] = std::to_string(close.size());
  m.parameters["summary.cc"] = std::to_string(kept.size());
  std::ostringstream csv;
  write_dataset(csv, kept, true);
  emit_csv(o.common, m, csv.str());
}

// --- metrics --------------------------------------------------------------

struct MetricsOptions {
  CommonOptions common;
  std::string dataset;
  bool per_gateway = false;
  std::string format = "json";
};

void cmd_metrics(const MetricsOptions& o) {
  const auto cfg = load_config(o.common);
  const auto profile = resolve_profile(cfg, o.common);
  const unsigned max_hops = resolve_max_hops(cfg, o.common, profile);
  const auto g = connected_graph(read_dataset(o.dataset), profile);

  MetricsReport report;
  try {
    report = full_report(g, max_hops, profile.name);
  } catch (const ResourceError& e) {
    throw ResourceError(std::string(e.what()) + " (try a smaller --max-hops)");
  }

  std::cerr << fmt::format("{:>10} {:>10} {:>10} {:>10} {:>12} {:>10}\n", "avg_anon", "min_anon", "avg_eff",
                           "min_eff", "avg_n2n", "avg_unique");
  std::cerr << fmt::format("{:>10.1f} {:>10} {:>10.1f} {:>10.1f} {:>12.1f} {:>10.1f}\n", report.avg_anonymity_set,
                           report.min_anonymity_set, report.avg_effective_set, report.min_effective_set,
                           report.avg_node2node_paths, report.avg_unique_paths);

  auto m = make_manifest("metrics", o.common, o.dataset);
  m.parameters = to_key_values(profile);
  m.parameters["protocol.max_hops"] = std::to_string(max_hops);

  if (o.format == "csv") {
    std::ostringstream csv;
    write_metrics_csv(csv, report);
    if (o.per_gateway) {
      csv << '\n';
      write_gateway_metrics_csv(csv, report);
    }
    emit_csv(o.common, m, csv.str());
  } else {
    nlohmann::ordered_json body;
    body["manifest"] = m.to_json();
    body["report"] = to_json(report, o.per_gateway);
    emit_json(o.common, std::move(body));
  }
}

// --- simulate -------------------------------------------------------------

struct SimulateOptions {
  CommonOptions common;
  std::string dataset;
  std::string clients;
  std::optional<std::uint32_t> runs;
  std::optional<double> duration_s;
  std::string sessions_csv;
  std::string runs_csv;
};

void cmd_simulate(const SimulateOptions& o) {
  const auto cfg = load_config(o.common);
  SimConfig sim;
  apply(cfg, sim);
  if (!o.common.profile.empty()) sim.profile = resolve_profile(cfg, o.common);
  if (!cfg.has("protocol.max_hops")) sim.protocol.max_hops = default_max_hops(sim.profile);
  if (o.common.max_hops) sim.protocol.max_hops = *o.common.max_hops;
  if (o.common.seed) sim.base_seed = *o.common.seed;
  if (o.runs) sim.runs = *o.runs;
  if (o.duration_s) sim.sim_duration_s = *o.duration_s;
  std::vector<unsigned> client_counts{sim.client_count};
  if (!o.clients.empty()) client_counts = parse_uint_list(o.clients, "--clients");
  sim.validate();

  const auto g = connected_graph(read_dataset(o.dataset), sim.profile);

  std::vector<CampaignRun> campaigns;
  for (unsigned clients : client_counts) {
    SimConfig c = sim;
    c.client_count = clients;
    c.validate();
    campaigns.push_back({clients, run_campaign(g, c)});
  }

  std::cerr << fmt::format("{:>8} {:>6} {:>14} {:>16}\n", "clients", "runs", "mean_tls_s", "mean_upload_s");
  for (const auto& c : campaigns) {
    double tls = 0.0;
    double up = 0.0;
    for (const auto& r : c.results) {
      tls += r.mean_tls_s;
      up += r.mean_upload_s;
    }
    const double n = static_cast<double>(c.results.size());
    std::cerr << fmt::format("{:>8} {:>6} {:>14.6f} {:>16.6f}\n", c.client_count, c.results.size(), tls / n, up / n);
  }

  auto m = make_manifest("simulate", o.common, o.dataset);
  m.parameters = to_key_values(sim);
  m.parameters["simulation.client_counts"] = o.clients.empty() ? std::to_string(sim.client_count) : o.clients;
  for (std::uint32_t i = 0; i < sim.runs; ++i) m.seeds.push_back(sim.base_seed + i);

  nlohmann::ordered_json body;
  body["manifest"] = m.to_json();
  auto jc = nlohmann::ordered_json::array();
  for (const auto& c : campaigns) {
    nlohmann::ordered_json entry;
    entry["client_count"] = c.client_count;
    auto runs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < c.results.size(); ++i) runs.push_back(to_json(c.results[i], i));
    entry["runs"] = std::move(runs);
    jc.push_back(std::move(entry));
  }
  body["campaigns"] = std::move(jc);
  emit_json(o.common, std::move(body));

  if (!o.sessions_csv.empty()) {
    std::ostringstream csv;
    write_sessions_csv(csv, campaigns);
    emit_csv(CommonOptions{.out = o.sessions_csv}, m, csv.str());
  }
  if (!o.runs_csv.empty()) {
    std::ostringstream csv;
    write_runs_csv(csv, campaigns);
    emit_csv(CommonOptions{.out = o.runs_csv}, m, csv.str());
  }
}

// --- distance -------------------------------------------------------------

struct DistanceOptions {
  CommonOptions common;
  std::string dataset;
  std::string hops_list;
  std::optional<std::uint64_t> samples;
  bool no_bias = false;
};

void cmd_distance(const DistanceOptions& o) {
  const auto cfg = load_config(o.common);
  const auto profile = resolve_profile(cfg, o.common);
  ProtocolConfig protocol;
  apply(cfg, protocol);
  if (o.no_bias) protocol.bias_enabled = false;

  std::vector<unsigned> hops;
  if (!o.hops_list.empty()) {
    hops = parse_uint_list(o.hops_list, "--max-hops");
  } else {
    const unsigned top = cfg.has("protocol.max_hops") ? protocol.max_hops : default_max_hops(profile);
    for (unsigned h = 0; h <= top; ++h) hops.push_back(h);
  }
  std::uint64_t samples = cfg.has("analysis.samples") ? cfg.get_uint("analysis.samples") : 10'000;
  if (o.samples) samples = *o.samples;
  const std::uint64_t seed = o.common.seed.value_or(cfg.has("simulation.seed") ? cfg.get_uint("simulation.seed") : 1);

  const auto g = connected_graph(read_dataset(o.dataset), profile);
  const auto study = sweep(g, hops, samples, seed, protocol);

  auto m = make_manifest("distance", o.common, o.dataset);
  m.parameters = to_key_values(profile);
  m.parameters.merge(to_key_values(protocol));
  m.parameters["analysis.samples"] = std::to_string(samples);
  m.parameters["analysis.max_hops_list"] = o.hops_list;
  for (std::size_t i = 0; i < hops.size(); ++i) m.seeds.push_back(seed + i);
  std::ostringstream csv;
  write_distance_csv(csv, study);
  emit_csv(o.common, m, csv.str());
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Gateway-mesh anonymity toolkit: datasets, metrics, simulation and distance studies"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Write a synthetic gateway dataset as CSV");
  g->add_option("kind", gen.kind, "uniform | clustered | complete")->required();
  g->add_option("n", gen.n, "Number of gateways")->required();
  g->add_option("--extent", gen.extent_m, "Side of the square layout in meters");
  add_common(g, gen.common, true, false);

  PreprocessOptions pre;
  auto* p = app.add_subcommand("preprocess", "Proximity-filter a dataset and keep its largest connected component");
  p->add_option("input", pre.input, "Input CSV (lat,lon)")->required();
  p->add_option("--min-sep", pre.min_sep_m, "Minimum separation in meters (default 200)");
  add_common(p, pre.common, false, false);

  MetricsOptions met;
  auto* mc = app.add_subcommand("metrics", "Anonymity metrics of a dataset");
  mc->add_option("dataset", met.dataset, "Dataset CSV")->required();
  mc->add_flag("--per-gateway", met.per_gateway, "Include per-gateway values");
  mc->add_option("--format", met.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  add_common(mc, met.common, false, true);

  SimulateOptions simo;
  auto* s = app.add_subcommand("simulate", "Run the session workload simulation");
  s->add_option("dataset", simo.dataset, "Dataset CSV")->required();
  s->add_option("--clients", simo.clients, "Comma-separated client counts, e.g. 1,10,50");
  s->add_option("--runs", simo.runs, "Runs per client count (default 30)");
  s->add_option("--duration", simo.duration_s, "Simulated seconds per run (default 3600)");
  s->add_option("--sessions-csv", simo.sessions_csv, "Also write per-session rows as CSV");
  s->add_option("--runs-csv", simo.runs_csv, "Also write per-run summary rows as CSV");
  add_common(s, simo.common, true, true);

  DistanceOptions dist;
  auto* d = app.add_subcommand("distance", "Origin-to-output distance study");
  d->add_option("dataset", dist.dataset, "Dataset CSV")->required();
  d->add_option("--samples", dist.samples, "Samples per max_hops value (default 10000)");
  d->add_flag("--no-bias", dist.no_bias, "Disable the directional selection bias");
  add_common(d, dist.common, true, false);
  d->add_option("--max-hops", dist.hops_list, "Comma-separated max_hops values (default 0..preset)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*g) cmd_generate(gen);
    if (*p) cmd_preprocess(pre);
    if (*mc) cmd_metrics(met);
    if (*s) cmd_simulate(simo);
    if (*d) cmd_distance(dist);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace anonsat::cli
