#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numbers>

#include "anonsat/errors.hpp"
#include "anonsat/protocol.hpp"
#include "support.hpp"

using namespace anonsat;
using namespace anonsat::testing;

namespace {

ProtocolConfig unbiased(unsigned max_hops) {
  ProtocolConfig cfg;
  cfg.max_hops = max_hops;
  cfg.bias_enabled = false;
  return cfg;
}

// Upper 1% point of chi-square with 50 degrees of freedom.
constexpr double kChi2Df50P01 = 76.154;

double chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return stat;
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("timeout modes parse and print") {
  for (auto m : {TimeoutMode::time, TimeoutMode::messages, TimeoutMode::per_session})
    CHECK(parse_timeout_mode(to_string(m)) == m);
  CHECK_THROWS_AS(parse_timeout_mode("hourly"), ConfigError);
}

TEST_CASE("ProtocolConfig validation") {
  ProtocolConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.weight_min = 4.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.weight_min = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.timeout_mode = TimeoutMode::time;
  cfg.gateway_timeout = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("bearing") {
  const GeoPoint origin{0.0, 0.0, 0};
  CHECK(bearing(origin, GeoPoint{1.0, 0.0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bearing(origin, GeoPoint{0.0, 1.0, 1}) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK(std::abs(bearing(origin, GeoPoint{1.0, 1.0, 1}) - 0.78534) <= 0.001);
  CHECK_THROWS_AS(bearing(origin, origin), DomainError);
}

TEST_CASE("candidate_set") {
  CHECK(candidate_set(path_graph(3), 0, 0) == std::vector<NodeId>{0});
  CHECK(candidate_set(path_graph(3), 0, 1) == std::vector<NodeId>{0, 1});
  CHECK(candidate_set(path_graph(3), 1, 1) == std::vector<NodeId>{0, 1, 2});
  CHECK(candidate_set(complete_graph(51), 7, 3).size() == 51);
  CHECK_THROWS_AS(candidate_set(path_graph(3), 9, 1), UnknownNodeError);
}

TEST_CASE("draw_bias") {
  Rng a(3), b(3);
  ProtocolConfig off = unbiased(3);
  ProtocolConfig on;
  const auto x = draw_bias(a, off);
  const auto y = draw_bias(b, on);
  CHECK(x.weight == 0.0);
  CHECK(x.direction == y.direction);
  CHECK(y.weight >= on.weight_min);
  CHECK(y.weight <= on.weight_max);
  // Both consume the same number of draws.
  CHECK(a.next() == b.next());

  Rng r(11);
  for (int i = 0; i < 1000; ++i) {
    const auto p = draw_bias(r, on);
    CHECK(p.direction >= 0.0);
    CHECK(p.direction < 2 * std::numbers::pi);
  }
}

TEST_CASE("OutputSelector probabilities") {
  SUBCASE("weight 0 on K51 is uniform") {
    const auto g = complete_graph(51);
    const OutputSelector sel(g, 0, BiasParams{1.0, 0.0}, 3);
    const auto p = sel.probabilities();
    REQUIRE(p.size() == 51);
    for (double v : p) CHECK(v == doctest::Approx(1.0 / 51).epsilon(1e-12));
  }
  SUBCASE("max_hops 0 always yields the origin") {
    const auto g = complete_graph(5);
    const OutputSelector sel(g, 2, BiasParams{0.3, 3.0}, 0);
    Rng rng(1);
    for (int i = 0; i < 100; ++i) CHECK(sel.draw(rng) == 2);
  }
  SUBCASE("east/west odds follow exp(2w)") {
    std::vector<GeoPoint> nodes{at_meters(-100, 0, 0), at_meters(0, 0, 1), at_meters(100, 0, 2)};
    const auto g = GatewayGraph::from_edges(nodes, {{0, 1, 100, 1}, {1, 2, 100, 1}});
    const BiasParams east{std::numbers::pi / 2, 2.0};
    const OutputSelector sel(g, 1, east, 1);
    const auto p = sel.probabilities();
    CHECK(p[2] / p[0] == doctest::Approx(std::exp(4.0)).epsilon(1e-9));
    CHECK(p[1] == doctest::Approx(1.0 / (std::exp(2.0) + std::exp(-2.0) + 1.0)).epsilon(1e-9));

    Rng rng(12345);
    std::uint64_t west = 0, eastward = 0;
    for (int i = 0; i < 1'000'000; ++i) {
      const auto c = sel.draw(rng);
      if (c == 0) ++west;
      if (c == 2) ++eastward;
    }
    const double ratio = static_cast<double>(eastward) / static_cast<double>(west);
    CHECK(std::abs(ratio / 54.598 - 1.0) < 0.05);
  }
  SUBCASE("co-located candidates get weight 1") {
    const GeoPoint a{10.0, 10.0, 0};
    const GeoPoint b{10.0, 10.0, 1};
    CHECK(candidate_weight(a, b, BiasParams{0.5, 3.0}) == 1.0);
  }
}

TEST_CASE("init_client") {
  const auto g = complete_graph(51);
  SUBCASE("bias disabled forces weight 0") {
    Rng rng(4);
    const auto s = init_client(g, 0, rng, unbiased(3));
    CHECK(s.bias.weight == 0.0);
  }
  SUBCASE("same seed, same state") {
    Rng a(8), b(8);
    const auto s = init_client(g, 5, a, ProtocolConfig{});
    const auto t = init_client(g, 5, b, ProtocolConfig{});
    CHECK(s.bias == t.bias);
    CHECK(s.current_output == t.current_output);
    CHECK(s.rotation_deadline == t.rotation_deadline);
  }
  SUBCASE("isolated origin selects itself") {
    const auto iso = topology(3, {{1, 2}});
    Rng rng(9);
    CHECK(init_client(iso, 0, rng, ProtocolConfig{}).current_output == 0);
  }
  SUBCASE("unknown origin") {
    Rng rng(9);
    CHECK_THROWS_AS(init_client(g, 99, rng, ProtocolConfig{}), UnknownNodeError);
  }
}

TEST_CASE("maybe_rotate") {
  const auto g = complete_graph(51);
  SUBCASE("before the deadline nothing changes") {
    ProtocolConfig cfg;
    cfg.timeout_mode = TimeoutMode::time;
    cfg.gateway_timeout = 60.0;
    Rng rng(2);
    auto s = init_client(g, 0, rng, cfg);
    const auto before = s.current_output;
    CHECK_FALSE(maybe_rotate(s, RotationClock{59.9, 0, 0}, g, cfg, rng));
    CHECK(s.current_output == before);
    CHECK(maybe_rotate(s, RotationClock{60.0, 0, 0}, g, cfg, rng));
    CHECK(s.rotation_deadline == doctest::Approx(120.0));
  }
  SUBCASE("message threshold is inclusive") {
    ProtocolConfig cfg;
    cfg.timeout_mode = TimeoutMode::messages;
    cfg.gateway_timeout = 10.0;
    Rng rng(2);
    auto s = init_client(g, 0, rng, cfg);
    CHECK_FALSE(maybe_rotate(s, RotationClock{0.0, 9, 0}, g, cfg, rng));
    CHECK(maybe_rotate(s, RotationClock{0.0, 10, 0}, g, cfg, rng));
  }
  SUBCASE("per session rotates after each completed session") {
    ProtocolConfig cfg;
    Rng rng(2);
    auto s = init_client(g, 0, rng, cfg);
    CHECK_FALSE(maybe_rotate(s, RotationClock{0.0, 0, 0}, g, cfg, rng));
    CHECK(maybe_rotate(s, RotationClock{0.0, 0, 1}, g, cfg, rng));
    CHECK_FALSE(maybe_rotate(s, RotationClock{0.0, 0, 1}, g, cfg, rng));
  }
  SUBCASE("forced rotations on K51 with weight 0 are uniform") {
    ProtocolConfig cfg = unbiased(3);
    Rng rng(2026);
    auto s = init_client(g, 0, rng, cfg);
    std::vector<std::uint64_t> counts(51, 0);
    for (std::uint64_t i = 1; i <= 1000; ++i) {
      REQUIRE(maybe_rotate(s, RotationClock{0.0, 0, i}, g, cfg, rng));
      ++counts[s.current_output];
    }
    CHECK(chi_square_uniform(counts) < kChi2Df50P01);
  }
  SUBCASE("bias is immutable and outputs stay in the candidate set") {
    const auto gg = [] {
      Rng r(17);
      return random_graph(40, 0.08, r);
    }();
    ProtocolConfig cfg;
    cfg.max_hops = 2;
    Rng rng(6);
    auto s = init_client(gg, 3, rng, cfg);
    const auto bias = s.bias;
    const auto cands = candidate_set(gg, 3, 2);
    for (std::uint64_t i = 1; i <= 500; ++i) {
      maybe_rotate(s, RotationClock{0.0, 0, i}, gg, cfg, rng);
      CHECK(std::memcmp(&bias, &s.bias, sizeof bias) == 0);
      CHECK(std::binary_search(cands.begin(), cands.end(), s.current_output));
    }
  }
}

TEST_CASE("select_output") {
  SUBCASE("unbiased K51 converges to uniform") {
    const auto g = complete_graph(51);
    ProtocolConfig cfg = unbiased(3);
    Rng rng(77);
    const auto s = init_client(g, 10, rng, cfg);
    std::vector<std::uint64_t> counts(51, 0);
    for (int i = 0; i < 100'000; ++i) ++counts[select_output(g, s, cfg, rng)];
    CHECK(chi_square_uniform(counts) < kChi2Df50P01);
  }
  SUBCASE("deterministic sequence") {
    Rng r(1);
    const auto g = random_graph(30, 0.1, r);
    ProtocolConfig cfg;
    Rng a(5), b(5);
    const auto s = init_client(g, 0, a, cfg);
    const auto t = init_client(g, 0, b, cfg);
    for (int i = 0; i < 200; ++i) CHECK(select_output(g, s, cfg, a) == select_output(g, t, cfg, b));
  }
}

}  // TEST_SUITE
