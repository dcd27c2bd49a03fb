#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace anonsat::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Everything needed to re-run a command. Timestamps are opt-in so that
/// seeded re-runs stay byte-identical.
struct RunManifest {
  std::string command;
  std::string config_path;
  std::map<std::string, std::string> parameters;
  std::string dataset_path;
  std::string dataset_sha256;
  std::vector<std::uint64_t> seeds;
  std::optional<std::string> timestamp;

  nlohmann::ordered_json to_json() const;
};

/// Hex SHA-256 of a file's bytes. Throws anonsat::Error if unreadable.
std::string sha256_file(const std::string& path);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

}  // namespace anonsat::cli
