#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <string>
#include <vector>

// Per-slot power, latency and accuracy evaluation for a candidate action
// (uplink rate, CPU frequency, encoder, anchor set).

namespace semcom {

struct EncoderProfile {
  std::string id;
  double flops = 0;     // floating ops per encoded sample
  int latent_dim = 0;   // output dimension d
};

struct AnchorOption {
  std::string id;
  int size = 0;  // number of anchors n_A
};

struct PhysParams {
  double bandwidth_hz = 1e6;   // uplink channel bandwidth B
  // Noise power term exactly as it multiplies the rate bracket in the uplink
  // power formula. The source model calls it a PSD but uses it unscaled by B;
  // we keep the formula verbatim, so this is a directly configured value.
  double noise_power = 1e-13;
  double kappa = 1e-27;        // effective switched capacitance, p_c = kappa*f^3
  double bits_per_entry = 32;  // quantization bits q per relrep entry
  double cycles_per_flop = 1;
  double rate_min_bps = 1e4;
  double rate_max_bps = 1e7;
  double freq_min_hz = 1e8;
  double freq_max_hz = 3e9;    // global cap; slots may draw lower caps

  // Throws ConfigError naming the violated invariant.
  void validate() const;
};

struct PowerBreakdown {
  double uplink_w = 0;
  double compute_w = 0;
  double total_w = 0;
};

struct LatencyBreakdown {
  double uplink_s = 0;
  double compute_s = 0;
  double total_s = 0;
};

// Realized cost/quality of one slot.
struct SlotOutcome {
  double p_u = 0, p_c = 0, p_total = 0;  // watts
  double l_u = 0, l_c = 0, l_total = 0;  // seconds
  double accuracy = 0;                   // G in [0, 1]
  bool latency_violation = false;        // 1[L >= L_ist]
};

// CPU cycles to encode one sample: encoder forward pass plus the similarity
// sweep against the anchors (2 flops per latent coordinate per anchor).
double compute_cycles(const EncoderProfile& enc, int n_anchors,
                      const PhysParams& p);

PowerBreakdown compute_power(double rate_bps, double freq_hz, double h2,
                             const PhysParams& p);

LatencyBreakdown compute_latency(double rate_bps, double freq_hz, double cycles,
                                 int n_anchors, const PhysParams& p);

SlotOutcome evaluate_slot(double rate_bps, double freq_hz, double h2,
                          const EncoderProfile& enc, int n_anchors,
                          double accuracy, double latency_inst_max_s,
                          const PhysParams& p);

// The discrete action space: encoders x anchor options with a profiled
// accuracy for every pair.
struct ActionSpace {
  std::vector<EncoderProfile> encoders;
  std::vector<AnchorOption> anchor_options;
  Eigen::MatrixXd accuracy;  // encoders.size() x anchor_options.size()

  // Throws ConfigError on missing cells, out-of-range values or empty sets.
  void validate() const;
};

// Table lookup; only profiled pairs are legal actions, no interpolation.
double lookup_accuracy(const ActionSpace& space, std::size_t encoder_index,
                       std::size_t anchor_index);
double lookup_accuracy(const ActionSpace& space, const std::string& encoder_id,
                       const std::string& anchor_id);

}  // namespace semcom
