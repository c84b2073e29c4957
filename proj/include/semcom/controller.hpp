#pragma once

#include <cstddef>
#include <string>

#include "semcom/channel.hpp"
#include "semcom/system_model.hpp"

// Drift-plus-penalty controller. Three virtual queues accumulate constraint
// slack (mean latency, mean accuracy, latency chance constraint); each slot
// the controller minimizes (Z+Y)*L - Q*G + V*p over the action space, with
// rate and CPU frequency given in closed form per (encoder, anchor) pair.

namespace semcom {

struct QueueState {
  double z = 0;  // mean-latency queue
  double q = 0;  // mean-accuracy queue
  double y = 0;  // chance-constraint queue
};

struct ControlParams {
  double v = 1e4;  // power weight in the drift-plus-penalty trade-off
  double eps_z = 1.0;
  double eps_q = 1.0;
  double eps_y = 1.0;
  double latency_avg_max_s = 0.04;    // L_bar
  double accuracy_avg_min = 0.8;      // G_bar
  double latency_inst_max_s = 0.0475; // L_ist
  double violation_prob_max = 0.3;    // p_ist
  // When set, the denominator of the closed-form rate prefactor 2B/log(2)
  // uses log10(2) as printed instead of ln(2); comparison mode only, the
  // result is no longer the slot-objective minimizer.
  bool rate_log_literal = false;

  void validate() const;
};

struct SlotDecision {
  std::size_t encoder_index = 0;
  std::size_t anchor_index = 0;
  std::string encoder_id;
  std::string anchor_id;
  double rate_bps = 0;
  double freq_hz = 0;
  double objective = 0;  // Psi at the chosen action
  SlotOutcome outcome;   // evaluated at the chosen action
};

QueueState update_queues(const QueueState& state, const SlotOutcome& outcome,
                         const ControlParams& params);

// Closed-form optimal uplink rate, clamped to [rate_min, rate_max].
double optimal_rate(double z, double y, int n_anchors, double h2,
                    const PhysParams& phys, const ControlParams& ctrl);

// Closed-form optimal CPU frequency, clamped to [freq_min, slot cap].
double optimal_frequency(double z, double y, double cycles, double f_max_hz,
                         const PhysParams& phys, const ControlParams& ctrl);

double slot_objective(const QueueState& state, double latency_s,
                      double accuracy, double power_w, double v);

// Exhaustive search over encoder x anchor pairs; ties broken toward the
// lowest (encoder index, anchor index).
SlotDecision decide(const QueueState& state, const SlotEnv& env,
                    const ActionSpace& space, const PhysParams& phys,
                    const ControlParams& ctrl);

}  // namespace semcom
