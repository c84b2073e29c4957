#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "semcom/errors.hpp"
#include "semcom/system_model.hpp"

using namespace semcom;

TEST_CASE("cycle model") {
  PhysParams p;
  p.cycles_per_flop = 1;

  SUBCASE("flops plus similarity sweep") {
    EncoderProfile enc{"e", 1e6, 64};
    CHECK(compute_cycles(enc, 100, p) == doctest::Approx(1e6 + 12800.0));
  }
  SUBCASE("table-sized encoder") {
    EncoderProfile enc{"mobilenetv3_small_100", 111.98e6, 576};
    CHECK(compute_cycles(enc, 50, p) == doctest::Approx(111980000.0 + 57600.0));
  }
  SUBCASE("cycles_per_flop scales everything") {
    EncoderProfile enc{"e", 1e6, 64};
    PhysParams p2 = p;
    p2.cycles_per_flop = 2.5;
    CHECK(compute_cycles(enc, 100, p2) == doctest::Approx(2.5 * (1e6 + 12800.0)));
  }
  SUBCASE("empty anchor sets are a caller bug") {
    EncoderProfile enc{"e", 1e6, 64};
    CHECK_THROWS_AS(compute_cycles(enc, 0, p), std::invalid_argument);
  }
}

TEST_CASE("uplink and compute power") {
  PhysParams p;
  p.bandwidth_hz = 1e6;
  p.noise_power = 1e-9;

  SUBCASE("rate equal to bandwidth collapses the exponent") {
    const auto out = compute_power(1e6, 1e9, 1e-6, p);
    CHECK(out.uplink_w == doctest::Approx(1e-9 / 1e-6).epsilon(1e-12));
  }
  SUBCASE("double rate over bandwidth") {
    const auto out = compute_power(2e6, 1e9, 1e-6, p);
    CHECK(out.uplink_w == doctest::Approx(3e-3).epsilon(1e-12));
  }
  SUBCASE("cubic frequency law") {
    const auto a = compute_power(1e6, 1e9, 1e-6, p);
    const auto b = compute_power(1e6, 2e9, 1e-6, p);
    CHECK(b.compute_w == doctest::Approx(8.0 * a.compute_w).epsilon(1e-12));
  }
  SUBCASE("totals add up") {
    const auto out = compute_power(3e6, 1.7e9, 1e-7, p);
    CHECK(out.total_w == doctest::Approx(out.uplink_w + out.compute_w));
  }
  SUBCASE("bad channel gain is an error") {
    CHECK_THROWS_AS(compute_power(1e6, 1e9, 0.0, p), std::invalid_argument);
    CHECK_THROWS_AS(compute_power(1e6, 1e9, -1e-6, p), std::invalid_argument);
  }
}

TEST_CASE("latency model") {
  PhysParams p;
  p.bits_per_entry = 32;

  SUBCASE("compute latency") {
    const auto out = compute_latency(1e6, 1e9, 1e9, 10, p);
    CHECK(out.compute_s == doctest::Approx(1.0));
  }
  SUBCASE("uplink latency") {
    const auto out = compute_latency(3.2e5, 1e9, 1e6, 100, p);
    CHECK(out.uplink_s == doctest::Approx(0.01));
  }
  SUBCASE("doubling rate and frequency halves the total") {
    const auto a = compute_latency(1e6, 1e9, 5e8, 50, p);
    const auto b = compute_latency(2e6, 2e9, 5e8, 50, p);
    CHECK(b.total_s == doctest::Approx(0.5 * a.total_s).epsilon(1e-12));
  }
}

TEST_CASE("power is increasing and convex, latency decreasing") {
  PhysParams p;
  // p_u over a rate grid
  double prev = -1, prev_diff = -1;
  for (int i = 1; i <= 40; ++i) {
    const double r = p.rate_min_bps + (p.rate_max_bps - p.rate_min_bps) * i / 40.0;
    const double pu = compute_power(r, 1e9, 1e-8, p).uplink_w;
    if (prev >= 0) {
      const double diff = pu - prev;
      CHECK(diff > 0);
      if (prev_diff >= 0) CHECK(diff > prev_diff);  // convexity: growing increments
      prev_diff = diff;
    }
    prev = pu;
  }
  // p_c over a frequency grid
  prev = -1;
  prev_diff = -1;
  for (int i = 1; i <= 40; ++i) {
    const double f = p.freq_min_hz + (p.freq_max_hz - p.freq_min_hz) * i / 40.0;
    const double pc = compute_power(1e6, f, 1e-8, p).compute_w;
    if (prev >= 0) {
      const double diff = pc - prev;
      CHECK(diff > 0);
      if (prev_diff >= 0) CHECK(diff > prev_diff);
      prev_diff = diff;
    }
    prev = pc;
  }
  // L decreasing in both
  const double l1 = compute_latency(1e6, 1e9, 1e8, 50, p).total_s;
  const double l2 = compute_latency(1.5e6, 1e9, 1e8, 50, p).total_s;
  const double l3 = compute_latency(1e6, 1.5e9, 1e8, 50, p).total_s;
  CHECK(l2 < l1);
  CHECK(l3 < l1);
}

TEST_CASE("slot evaluation ties the pieces together") {
  PhysParams p;
  EncoderProfile enc{"e", 2e7, 64};
  const SlotOutcome out = evaluate_slot(1e6, 1e9, 1e-11, enc, 50, 0.85, 0.0475, p);
  CHECK(out.p_total == doctest::Approx(out.p_u + out.p_c));
  CHECK(out.l_total == doctest::Approx(out.l_u + out.l_c));
  CHECK(out.accuracy == 0.85);
  CHECK(out.latency_violation == (out.l_total >= 0.0475));
}

TEST_CASE("action space validation and lookup") {
  ActionSpace space;
  space.encoders = {{"a", 1e7, 32}, {"b", 5e7, 32}};
  space.anchor_options = {{"10", 10}, {"20", 20}};
  space.accuracy.resize(2, 2);
  space.accuracy << 0.7, 0.8, 0.85, 0.95;
  CHECK_NOTHROW(space.validate());
  CHECK(lookup_accuracy(space, 1, 0) == 0.85);
  CHECK(lookup_accuracy(space, "a", "20") == 0.8);
  CHECK_THROWS_AS(lookup_accuracy(space, "a", "30"), std::invalid_argument);
  CHECK_THROWS_AS(lookup_accuracy(space, 2, 0), std::invalid_argument);

  SUBCASE("accuracy out of range") {
    space.accuracy(0, 0) = 1.2;
    CHECK_THROWS_AS(space.validate(), ConfigError);
  }
  SUBCASE("shape mismatch") {
    space.accuracy.resize(2, 1);
    CHECK_THROWS_AS(space.validate(), ConfigError);
  }
  SUBCASE("empty space") {
    ActionSpace empty;
    CHECK_THROWS_AS(empty.validate(), ConfigError);
  }
}
