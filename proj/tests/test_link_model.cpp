#include <doctest.h>

#include <cmath>

#include "anonsat/errors.hpp"
#include "anonsat/link_model.hpp"

using namespace anonsat;

TEST_SUITE("linkmodel") {

TEST_CASE("builtin profiles") {
  const auto& p = builtin_profiles();
  REQUIRE(p.size() == 4);
  CHECK(p[0] == LinkProfile{"lora-subghz", 5000.0, 50'000.0});
  CHECK(p[1] == LinkProfile{"dash7", 5000.0, 166'000.0});
  CHECK(p[2] == LinkProfile{"lora24-ltem1", 1000.0, 1'000'000.0});
  CHECK(p[3] == LinkProfile{"ltem2", 1000.0, 4'000'000.0});
  CHECK(find_builtin_profile("ltem2")->max_rate_bps == 4'000'000.0);
  CHECK_FALSE(find_builtin_profile("nb-iot").has_value());
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS((LinkProfile{"x", 0.0, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((LinkProfile{"x", 1.0, 0.0}.validate()), ConfigError);
  CHECK_NOTHROW((LinkProfile{"x", 1.0, 1.0}.validate()));
}

TEST_CASE("relative_rate") {
  CHECK(relative_rate(0.0) == 1.0);
  CHECK(relative_rate(1.0) == doctest::Approx(0.1353352832366127).epsilon(1e-12));
  CHECK(relative_rate(0.5) == doctest::Approx(0.36787944117144233).epsilon(1e-12));
  CHECK_THROWS_AS(relative_rate(-0.01), DomainError);
  CHECK_THROWS_AS(relative_rate(1.01), DomainError);
  CHECK_THROWS_AS(relative_rate(std::nan("")), DomainError);

  SUBCASE("strictly decreasing and bounded on a dense grid") {
    double prev = relative_rate(0.0);
    for (int i = 1; i <= 10'000; ++i) {
      const double r = relative_rate(i / 10'000.0);
      CHECK(r < prev);
      CHECK(r >= std::exp(-2.0));
      // Continuity: no jump larger than the derivative bound 2 * step.
      CHECK(prev - r <= 2.0 / 10'000.0 + 1e-15);
      prev = r;
    }
  }
}

TEST_CASE("link_rate") {
  const auto lora = *find_builtin_profile("lora-subghz");
  const auto ltem2 = *find_builtin_profile("ltem2");
  CHECK(link_rate(0.0, lora) == 50'000.0);
  CHECK(std::abs(link_rate(5000.0, lora) - 6766.8) < 0.1);
  CHECK(std::abs(link_rate(500.0, ltem2) - 1'471'517.8) < 1.0);
  CHECK_THROWS_AS(link_rate(5000.1, lora), DomainError);

  SUBCASE("relative rate independent of max_rate") {
    for (double d : {0.0, 120.0, 777.0, 1000.0}) {
      const LinkProfile a{"a", 1000.0, 1.0e3};
      const LinkProfile b{"b", 1000.0, 7.5e6};
      CHECK(link_rate(d, a) / a.max_rate_bps == doctest::Approx(link_rate(d, b) / b.max_rate_bps).epsilon(1e-14));
    }
  }
}

}  // TEST_SUITE
