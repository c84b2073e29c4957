#include "semcom/channel.hpp"

#include <cmath>

#include "semcom/errors.hpp"
#include "semcom/rng.hpp"
#include "semcom/system_model.hpp"

namespace semcom {

namespace {
// Stream ids inside the per-run seed space.
constexpr std::uint64_t kStreamFading = 0;
constexpr std::uint64_t kStreamFreqCap = 1;
}  // namespace

double ChannelParams::path_gain() const {
  return std::pow(10.0, reference_gain_db / 10.0) *
         std::pow(distance_m, -pathloss_exponent);
}

void ChannelParams::validate(const PhysParams& phys) const {
  if (distance_m <= 0)
    throw ConfigError("channel: invariant violated: distance_m > 0");
  if (pathloss_exponent < 0)
    throw ConfigError("channel: invariant violated: pathloss_exponent >= 0");
  if (freq_cap_low_hz > freq_cap_high_hz)
    throw ConfigError("channel: invariant violated: freq_cap_low_hz <= freq_cap_high_hz");
  if (freq_cap_low_hz < phys.freq_min_hz)
    throw ConfigError("channel: invariant violated: freq_cap_low_hz >= freq_min_hz");
  if (freq_cap_high_hz > phys.freq_max_hz)
    throw ConfigError("channel: invariant violated: freq_cap_high_hz <= freq_max_hz");
}

SlotEnv draw_slot_env(std::uint64_t t, const ChannelParams& params) {
  SlotEnv env;
  const double g = params.rayleigh_fading
                       ? rng::counter_exp1(params.seed, t, kStreamFading)
                       : 1.0;
  env.h2 = params.path_gain() * g;
  if (env.h2 < 1e-300) env.h2 = 1e-300;
  const double u = rng::counter_unit(params.seed, t, kStreamFreqCap);
  env.f_max_hz =
      params.freq_cap_low_hz + u * (params.freq_cap_high_hz - params.freq_cap_low_hz);
  return env;
}

}  // namespace semcom
