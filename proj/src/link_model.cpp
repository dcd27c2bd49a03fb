#include "anonsat/link_model.hpp"

#include <cmath>
#include <fmt/format.h>

#include "anonsat/errors.hpp"

namespace anonsat {

void LinkProfile::validate() const {
  if (!(max_range_m > 0.0)) throw ConfigError("profile.range_m", "must be positive");
  if (!(max_rate_bps > 0.0)) throw ConfigError("profile.rate_bps", "must be positive");
}

const std::vector<LinkProfile>& builtin_profiles() {
  static const std::vector<LinkProfile> profiles{
      {"lora-subghz", 5'000.0, 50'000.0},
      {"dash7", 5'000.0, 166'000.0},
      {"lora24-ltem1", 1'000.0, 1'000'000.0},
      {"ltem2", 1'000.0, 4'000'000.0},
  };
  return profiles;
}

std::optional<LinkProfile> find_builtin_profile(const std::string& name) {
  for (const auto& p : builtin_profiles()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

double relative_rate(double d_rel) {
  if (!(d_rel >= 0.0 && d_rel <= 1.0)) {
    throw DomainError(fmt::format("relative distance {} outside [0, 1]", d_rel));
  }
  return std::exp(-2.0 * d_rel);
}

double link_rate(double distance_m, const LinkProfile& profile) {
  if (distance_m > profile.max_range_m || distance_m < 0.0) {
    throw DomainError(fmt::format("distance {} m outside range of profile '{}' ({} m)", distance_m,
                                  profile.name, profile.max_range_m));
  }
  return profile.max_rate_bps * relative_rate(distance_m / profile.max_range_m);
}

}  // namespace anonsat
