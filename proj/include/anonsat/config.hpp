#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "anonsat/link_model.hpp"
#include "anonsat/protocol.hpp"
#include "anonsat/simulator.hpp"

namespace anonsat {

/// Flat `section.key = value` configuration. `#` starts a comment line.
/// Unknown keys are rejected so typos surface as errors.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.contains(key); }
  void set(const std::string& key, std::string value);
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key) const;
  bool get_bool(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
};

/// Overrides the fields named in the config; the rest keep their values.
/// Throws ConfigError with the key on unparsable or invalid values.
void apply(const KeyValueConfig& cfg, LinkProfile& profile);
void apply(const KeyValueConfig& cfg, ProtocolConfig& protocol);
void apply(const KeyValueConfig& cfg, SimConfig& sim);

/// Resolved parameters as config keys, for manifests.
std::map<std::string, std::string> to_key_values(const LinkProfile& profile);
std::map<std::string, std::string> to_key_values(const ProtocolConfig& protocol);
std::map<std::string, std::string> to_key_values(const SimConfig& sim);

/// max_hops preset for a range: 3 for 5 km class links, 5 for 1 km class.
unsigned default_max_hops(const LinkProfile& profile);

}  // namespace anonsat
