#include "semcom/system_model.hpp"

#include <cmath>
#include <stdexcept>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

void require(bool ok, const std::string& invariant) {
  if (!ok) throw ConfigError("system_model: invariant violated: " + invariant);
}

}  // namespace

void PhysParams::validate() const {
  require(bandwidth_hz > 0, "bandwidth_hz > 0");
  require(noise_power > 0, "noise_power > 0");
  require(kappa > 0, "kappa > 0");
  require(bits_per_entry > 0, "bits_per_entry > 0");
  require(cycles_per_flop > 0, "cycles_per_flop > 0");
  require(rate_min_bps > 0, "rate_min_bps > 0");
  require(rate_min_bps < rate_max_bps, "rate_min_bps < rate_max_bps");
  require(freq_min_hz > 0, "freq_min_hz > 0");
  require(freq_min_hz < freq_max_hz, "freq_min_hz < freq_max_hz");
}

double compute_cycles(const EncoderProfile& enc, int n_anchors,
                      const PhysParams& p) {
  if (enc.flops <= 0)
    throw std::invalid_argument("compute_cycles: encoder flops must be > 0");
  if (n_anchors <= 0)
    throw std::invalid_argument("compute_cycles: anchor count must be >= 1");
  const double sim_flops = 2.0 * enc.latent_dim * n_anchors;
  return (enc.flops + sim_flops) * p.cycles_per_flop;
}

PowerBreakdown compute_power(double rate_bps, double freq_hz, double h2,
                             const PhysParams& p) {
  if (h2 <= 0)
    throw std::invalid_argument("compute_power: channel gain must be > 0");
  if (rate_bps <= 0 || freq_hz <= 0)
    throw std::invalid_argument("compute_power: rate and frequency must be > 0");
  PowerBreakdown out;
  out.uplink_w = p.noise_power / h2 * std::expm1(rate_bps / p.bandwidth_hz * M_LN2);
  out.compute_w = p.kappa * freq_hz * freq_hz * freq_hz;
  out.total_w = out.uplink_w + out.compute_w;
  return out;
}

LatencyBreakdown compute_latency(double rate_bps, double freq_hz, double cycles,
                                 int n_anchors, const PhysParams& p) {
  if (rate_bps <= 0 || freq_hz <= 0)
    throw std::invalid_argument("compute_latency: rate and frequency must be > 0");
  LatencyBreakdown out;
  out.uplink_s = n_anchors * p.bits_per_entry / rate_bps;
  out.compute_s = cycles / freq_hz;
  out.total_s = out.uplink_s + out.compute_s;
  return out;
}

SlotOutcome evaluate_slot(double rate_bps, double freq_hz, double h2,
                          const EncoderProfile& enc, int n_anchors,
                          double accuracy, double latency_inst_max_s,
                          const PhysParams& p) {
  const double cycles = compute_cycles(enc, n_anchors, p);
  const auto power = compute_power(rate_bps, freq_hz, h2, p);
  const auto latency = compute_latency(rate_bps, freq_hz, cycles, n_anchors, p);
  SlotOutcome out;
  out.p_u = power.uplink_w;
  out.p_c = power.compute_w;
  out.p_total = power.total_w;
  out.l_u = latency.uplink_s;
  out.l_c = latency.compute_s;
  out.l_total = latency.total_s;
  out.accuracy = accuracy;
  out.latency_violation = out.l_total >= latency_inst_max_s;
  return out;
}

void ActionSpace::validate() const {
  if (encoders.empty()) throw ConfigError("action space: no encoders");
  if (anchor_options.empty()) throw ConfigError("action space: no anchor options");
  if (accuracy.rows() != static_cast<Eigen::Index>(encoders.size()) ||
      accuracy.cols() != static_cast<Eigen::Index>(anchor_options.size()))
    throw ConfigError("action space: accuracy table shape does not cover every "
                      "(encoder, anchor) pair");
  for (const auto& e : encoders)
    if (e.flops <= 0)
      throw ConfigError("action space: encoder '" + e.id + "' has flops <= 0");
  for (const auto& a : anchor_options)
    if (a.size < 1)
      throw ConfigError("action space: anchor option '" + a.id + "' has size < 1");
  for (Eigen::Index i = 0; i < accuracy.rows(); ++i)
    for (Eigen::Index j = 0; j < accuracy.cols(); ++j) {
      const double g = accuracy(i, j);
      if (!(g >= 0.0 && g <= 1.0))
        throw ConfigError("action space: accuracy G(" + encoders[i].id + ", " +
                          anchor_options[j].id + ") out of [0, 1]");
    }
}

double lookup_accuracy(const ActionSpace& space, std::size_t encoder_index,
                       std::size_t anchor_index) {
  if (encoder_index >= space.encoders.size() ||
      anchor_index >= space.anchor_options.size())
    throw std::invalid_argument("lookup_accuracy: index out of range");
  return space.accuracy(static_cast<Eigen::Index>(encoder_index),
                        static_cast<Eigen::Index>(anchor_index));
}

double lookup_accuracy(const ActionSpace& space, const std::string& encoder_id,
                       const std::string& anchor_id) {
  for (std::size_t i = 0; i < space.encoders.size(); ++i)
    for (std::size_t j = 0; j < space.anchor_options.size(); ++j)
      if (space.encoders[i].id == encoder_id &&
          space.anchor_options[j].id == anchor_id)
        return lookup_accuracy(space, i, j);
  throw std::invalid_argument("lookup_accuracy: unknown pair (" + encoder_id +
                              ", " + anchor_id + ")");
}

}  // namespace semcom
