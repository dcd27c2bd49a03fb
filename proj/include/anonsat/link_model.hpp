#pragma once

#include <optional>
#include <string>
#include <vector>

namespace anonsat {

/// Maximum range and maximum data rate of one long-range radio technology.
struct LinkProfile {
  std::string name;
  double max_range_m = 0.0;
  double max_rate_bps = 0.0;

  /// Throws ConfigError unless both range and rate are positive.
  void validate() const;

  friend bool operator==(const LinkProfile&, const LinkProfile&) = default;
};

/// The four simulated range/rate combinations, in order:
/// lora-subghz, dash7, lora24-ltem1, ltem2.
const std::vector<LinkProfile>& builtin_profiles();

std::optional<LinkProfile> find_builtin_profile(const std::string& name);

/// Relative data rate e^(-2 d) at relative distance d in [0, 1].
double relative_rate(double d_rel);

/// Effective rate of a link of the given length: max_rate * relative_rate(d / range).
/// Throws DomainError for distances beyond the profile range or below zero.
double link_rate(double distance_m, const LinkProfile& profile);

}  // namespace anonsat
