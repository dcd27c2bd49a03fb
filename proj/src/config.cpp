#include "anonsat/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <string_view>

#include "anonsat/errors.hpp"

namespace anonsat {

namespace {

constexpr std::array kKnownKeys = {
    "profile.name",
    "profile.range_m",
    "profile.rate_bps",
    "protocol.max_hops",
    "protocol.gateway_timeout_s",
    "protocol.timeout_mode",
    "protocol.bias_enabled",
    "protocol.weight_min",
    "protocol.weight_max",
    "simulation.client_count",
    "simulation.sim_duration_s",
    "simulation.wan_delay_s",
    "simulation.payload_bytes",
    "simulation.mtu_bytes",
    "simulation.syn_bytes",
    "simulation.synack_bytes",
    "simulation.ack_clienthello_bytes",
    "simulation.serverhello_bytes",
    "simulation.runs",
    "simulation.seed",
    "analysis.samples",
    "geodata.min_sep_m",
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool is_known(const std::string& key) {
  return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string row = trim(raw);
    if (row.empty() || row.front() == '#') continue;
    const auto eq = row.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("line {}", line), "expected 'section.key = value'");
    }
    cfg.set(trim(std::string_view(row).substr(0, eq)), trim(std::string_view(row).substr(eq + 1)));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  return parse(in);
}

void KeyValueConfig::set(const std::string& key, std::string value) {
  if (!is_known(key)) throw ConfigError(key, "unknown key");
  values_[key] = std::move(value);
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key, "missing");
  return it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(key, "expected a number, got '" + s + "'");
  }
  return v;
}

std::uint64_t KeyValueConfig::get_uint(const std::string& key) const {
  const std::string s = get_string(key);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(key, "expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

bool KeyValueConfig::get_bool(const std::string& key) const {
  const std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key, "expected true or false, got '" + s + "'");
}

void apply(const KeyValueConfig& cfg, LinkProfile& profile) {
  if (cfg.has("profile.name")) {
    const auto name = cfg.get_string("profile.name");
    if (auto builtin = find_builtin_profile(name)) {
      profile = *builtin;
    } else {
      profile.name = name;
    }
  }
  if (cfg.has("profile.range_m")) profile.max_range_m = cfg.get_double("profile.range_m");
  if (cfg.has("profile.rate_bps")) profile.max_rate_bps = cfg.get_double("profile.rate_bps");
  profile.validate();
}

void apply(const KeyValueConfig& cfg, ProtocolConfig& protocol) {
  if (cfg.has("protocol.max_hops")) protocol.max_hops = static_cast<unsigned>(cfg.get_uint("protocol.max_hops"));
  if (cfg.has("protocol.gateway_timeout_s")) protocol.gateway_timeout = cfg.get_double("protocol.gateway_timeout_s");
  if (cfg.has("protocol.timeout_mode")) protocol.timeout_mode = parse_timeout_mode(cfg.get_string("protocol.timeout_mode"));
  if (cfg.has("protocol.bias_enabled")) protocol.bias_enabled = cfg.get_bool("protocol.bias_enabled");
  if (cfg.has("protocol.weight_min")) protocol.weight_min = cfg.get_double("protocol.weight_min");
  if (cfg.has("protocol.weight_max")) protocol.weight_max = cfg.get_double("protocol.weight_max");
  protocol.validate();
}

void apply(const KeyValueConfig& cfg, SimConfig& sim) {
  apply(cfg, sim.profile);
  apply(cfg, sim.protocol);
  auto u32 = [&](const char* key, std::uint32_t& field) {
    if (cfg.has(key)) field = static_cast<std::uint32_t>(cfg.get_uint(key));
  };
  auto u64 = [&](const char* key, std::uint64_t& field) {
    if (cfg.has(key)) field = cfg.get_uint(key);
  };
  auto dbl = [&](const char* key, double& field) {
    if (cfg.has(key)) field = cfg.get_double(key);
  };
  u32("simulation.client_count", sim.client_count);
  dbl("simulation.sim_duration_s", sim.sim_duration_s);
  dbl("simulation.wan_delay_s", sim.wan_delay_s);
  u64("simulation.payload_bytes", sim.payload_bytes);
  u64("simulation.mtu_bytes", sim.mtu_bytes);
  u64("simulation.syn_bytes", sim.syn_bytes);
  u64("simulation.synack_bytes", sim.synack_bytes);
  u64("simulation.ack_clienthello_bytes", sim.ack_clienthello_bytes);
  u64("simulation.serverhello_bytes", sim.serverhello_bytes);
  u32("simulation.runs", sim.runs);
  u64("simulation.seed", sim.base_seed);
  sim.validate();
}

std::map<std::string, std::string> to_key_values(const LinkProfile& profile) {
  return {
      {"profile.name", profile.name},
      {"profile.range_m", fmt::format("{}", profile.max_range_m)},
      {"profile.rate_bps", fmt::format("{}", profile.max_rate_bps)},
  };
}

std::map<std::string, std::string> to_key_values(const ProtocolConfig& protocol) {
  return {
      {"protocol.max_hops", fmt::format("{}", protocol.max_hops)},
      {"protocol.gateway_timeout_s", fmt::format("{}", protocol.gateway_timeout)},
      {"protocol.timeout_mode", to_string(protocol.timeout_mode)},
      {"protocol.bias_enabled", protocol.bias_enabled ? "true" : "false"},
      {"protocol.weight_min", fmt::format("{}", protocol.weight_min)},
      {"protocol.weight_max", fmt::format("{}", protocol.weight_max)},
  };
}

std::map<std::string, std::string> to_key_values(const SimConfig& sim) {
  auto kv = to_key_values(sim.profile);
  kv.merge(to_key_values(sim.protocol));
  kv["simulation.client_count"] = fmt::format("{}", sim.client_count);
  kv["simulation.sim_duration_s"] = fmt::format("{}", sim.sim_duration_s);
  kv["simulation.wan_delay_s"] = fmt::format("{}", sim.wan_delay_s);
  kv["simulation.payload_bytes"] = fmt::format("{}", sim.payload_bytes);
  kv["simulation.mtu_bytes"] = fmt::format("{}", sim.mtu_bytes);
  kv["simulation.syn_bytes"] = fmt::format("{}", sim.syn_bytes);
  kv["simulation.synack_bytes"] = fmt::format("{}", sim.synack_bytes);
  kv["simulation.ack_clienthello_bytes"] = fmt::format("{}", sim.ack_clienthello_bytes);
  kv["simulation.serverhello_bytes"] = fmt::format("{}", sim.serverhello_bytes);
  kv["simulation.runs"] = fmt::format("{}", sim.runs);
  kv["simulation.seed"] = fmt::format("{}", sim.base_seed);
  return kv;
}

unsigned default_max_hops(const LinkProfile& profile) { return profile.max_range_m >= 2500.0 ? 3 : 5; }

}  // namespace anonsat
