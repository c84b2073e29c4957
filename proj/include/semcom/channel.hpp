#pragma once

#include <cstdint>

// Per-slot random environment: uplink channel power gain and the CPU
// frequency cap available at the transmitter. Draws are counter-based, so
// the same (seed, t) yields the same environment regardless of call order.

namespace semcom {

struct PhysParams;

struct ChannelParams {
  double distance_m = 100.0;
  double pathloss_exponent = 3.5;
  double reference_gain_db = -40.0;  // gain at 1 m, in dB
  bool rayleigh_fading = true;       // block fading, Exp(1) power gain per slot
  double freq_cap_low_hz = 1e9;
  double freq_cap_high_hz = 3e9;
  std::uint64_t seed = 1;

  double path_gain() const;  // linear reference gain * distance^-exponent

  void validate(const PhysParams& phys) const;
};

struct SlotEnv {
  double h2 = 0;        // channel power gain |h_t|^2, > 0
  double f_max_hz = 0;  // available CPU cap this slot
};

SlotEnv draw_slot_env(std::uint64_t t, const ChannelParams& params);

}  // namespace semcom
