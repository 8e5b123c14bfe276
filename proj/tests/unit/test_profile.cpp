#include <doctest.h>

#include <nlohmann/json.hpp>

#include "attrkit/profile.hpp"
#include "attrkit/rng.hpp"

using namespace attrkit;

namespace {

// Lemma-style compress profile: identity to R*, r/2 from 2R on.
RadialProfile theta(double r_star, double r_big) {
  return RadialProfile({{r_star, r_star}, {2.0 * r_big, r_big}}, 0.5);
}

// Seeded generator of valid profiles (random increasing breakpoints).
RadialProfile random_profile(const CounterRng& rng, std::uint64_t i) {
  const int n = 1 + static_cast<int>(rng.bits(3 * i) % 5);
  std::vector<RadialProfile::Breakpoint> bps;
  double r = 0.0, v = 0.0;
  for (int b = 0; b < n; ++b) {
    r += 0.05 + rng.uniform(3 * i + 1 + static_cast<std::uint64_t>(b) * 7);
    v += 0.05 + rng.uniform(3 * i + 2 + static_cast<std::uint64_t>(b) * 13);
    bps.push_back({r, v});
  }
  return RadialProfile(std::move(bps), 0.25 + rng.uniform(3 * i + 2));
}

}  // namespace

TEST_CASE("profile evaluates the compress example") {
  const RadialProfile t = theta(0.5, 1.0);
  CHECK(t(4.0) == doctest::Approx(2.0).epsilon(1e-15));  // r/2 beyond 2R
  CHECK(t(0.0) == 0.0);
  // Hand-evaluated segment from (0.5,0.5) to (2,1).
  CHECK(t(1.25) == doctest::Approx(0.75).epsilon(1e-15));
  // Identity segment is exact bitwise.
  CHECK(t(0.25) == 0.25);
  CHECK(t(0.5) == 0.5);
}

TEST_CASE("profile construction rejects malformed breakpoints") {
  CHECK_THROWS(RadialProfile({{1.0, 1.0}, {0.5, 2.0}}, 1.0));   // radii not increasing
  CHECK_THROWS(RadialProfile({{0.5, 1.0}, {1.0, 0.5}}, 1.0));   // values not increasing
  CHECK_THROWS(RadialProfile({{1.0, 1.0}}, 0.0));               // flat tail not allowed
  CHECK_THROWS(RadialProfile({{1.0, 1.0}}, -1.0));
  CHECK_NOTHROW(RadialProfile({{1.0, 1.0}}, 0.0, /*allow_flat_tail=*/true));
}

TEST_CASE("profile inversion") {
  const RadialProfile id = RadialProfile::identity();
  CHECK(id.inverse()(3.7) == 3.7);

  const RadialProfile t = theta(0.5, 1.0);
  CHECK(t.inverse()(2.0) == doctest::Approx(4.0).epsilon(1e-15));

  const RadialProfile p({{1.0, 0.5}}, 1.0);
  CHECK(p.inverse()(0.5) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("profile inverse round-trips exactly at breakpoints, tightly elsewhere") {
  const CounterRng rng = CounterRng(41).stream("profiles");
  for (std::uint64_t i = 0; i < 40; ++i) {
    const RadialProfile p = random_profile(rng, i);
    const RadialProfile q = p.inverse();
    for (const auto& bp : p.breakpoints()) CHECK(q(p(bp.r)) == bp.r);
    for (int g = 0; g <= 50; ++g) {
      const double r = 6.0 * g / 50.0;
      CHECK(q(p(r)) == doctest::Approx(r).epsilon(1e-12));
    }
  }
}

TEST_CASE("profiles are strictly increasing on a dense grid") {
  const CounterRng rng = CounterRng(42).stream("monotone");
  for (std::uint64_t i = 0; i < 40; ++i) {
    const RadialProfile p = random_profile(rng, i);
    double prev = p(0.0);
    for (int g = 1; g <= 200; ++g) {
      const double cur = p(8.0 * g / 200.0);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("profile JSON round trip") {
  const RadialProfile t = theta(0.5, 1.0);
  const RadialProfile back = profile_from_json(profile_to_json(t));
  CHECK(back.tail_slope() == t.tail_slope());
  REQUIRE(back.breakpoints().size() == t.breakpoints().size());
  for (std::size_t i = 0; i < t.breakpoints().size(); ++i) {
    CHECK(back.breakpoints()[i].r == t.breakpoints()[i].r);
    CHECK(back.breakpoints()[i].value == t.breakpoints()[i].value);
  }
}
