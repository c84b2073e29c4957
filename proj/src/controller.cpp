#include "semcom/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "semcom/errors.hpp"
#include "semcom/lambert_w.hpp"

namespace semcom {

void ControlParams::validate() const {
  if (v <= 0) throw ConfigError("controller: invariant violated: v > 0");
  if (eps_z <= 0 || eps_q <= 0 || eps_y <= 0)
    throw ConfigError("controller: invariant violated: step sizes > 0");
  if (!(violation_prob_max > 0 && violation_prob_max < 1))
    throw ConfigError("controller: invariant violated: 0 < violation_prob_max < 1");
  if (!(accuracy_avg_min > 0 && accuracy_avg_min < 1))
    throw ConfigError("controller: invariant violated: 0 < accuracy_avg_min < 1");
  if (latency_avg_max_s <= 0)
    throw ConfigError("controller: invariant violated: latency_avg_max_s > 0");
  if (latency_inst_max_s < latency_avg_max_s)
    throw ConfigError(
        "controller: invariant violated: latency_inst_max_s >= latency_avg_max_s");
}

QueueState update_queues(const QueueState& state, const SlotOutcome& outcome,
                         const ControlParams& params) {
  QueueState next;
  const double violation = outcome.latency_violation ? 1.0 : 0.0;
  next.y = std::max(
      0.0, state.y + params.eps_y * (violation - params.violation_prob_max));
  next.z = std::max(
      0.0, state.z + params.eps_z * (outcome.l_total - params.latency_avg_max_s));
  next.q = std::max(
      0.0, state.q + params.eps_q * (params.accuracy_avg_min - outcome.accuracy));
  return next;
}

double optimal_rate(double z, double y, int n_anchors, double h2,
                    const PhysParams& phys, const ControlParams& ctrl) {
  if (z < 0 || y < 0) throw std::invalid_argument("optimal_rate: queues must be >= 0");
  if (h2 <= 0) throw std::invalid_argument("optimal_rate: channel gain must be > 0");
  const double pressure = z + y;
  const double bits = n_anchors * phys.bits_per_entry;
  const double arg = 0.5 * std::sqrt(pressure * bits * h2 * M_LN2 /
                                     (phys.bandwidth_hz * ctrl.v * phys.noise_power));
  const double log2_term = ctrl.rate_log_literal ? std::log10(2.0) : M_LN2;
  const double unclamped = 2.0 * phys.bandwidth_hz / log2_term * lambert_w0(arg);
  return std::clamp(unclamped, phys.rate_min_bps, phys.rate_max_bps);
}

double optimal_frequency(double z, double y, double cycles, double f_max_hz,
                         const PhysParams& phys, const ControlParams& ctrl) {
  if (z < 0 || y < 0)
    throw std::invalid_argument("optimal_frequency: queues must be >= 0");
  if (cycles <= 0) throw std::invalid_argument("optimal_frequency: cycles must be > 0");
  const double pressure = z + y;
  const double unclamped =
      std::pow(pressure * cycles / (3.0 * ctrl.v * phys.kappa), 0.25);
  return std::clamp(unclamped, phys.freq_min_hz, f_max_hz);
}

double slot_objective(const QueueState& state, double latency_s,
                      double accuracy, double power_w, double v) {
  return (state.z + state.y) * latency_s - state.q * accuracy + v * power_w;
}

SlotDecision decide(const QueueState& state, const SlotEnv& env,
                    const ActionSpace& space, const PhysParams& phys,
                    const ControlParams& ctrl) {
  if (space.encoders.empty() || space.anchor_options.empty())
    throw std::invalid_argument("decide: empty action space");

  // The rate only depends on the anchor option; hoist it out of the pair loop.
  std::vector<double> rate_per_anchor(space.anchor_options.size());
  for (std::size_t a = 0; a < space.anchor_options.size(); ++a)
    rate_per_anchor[a] = optimal_rate(state.z, state.y,
                                      space.anchor_options[a].size, env.h2,
                                      phys, ctrl);

  SlotDecision best;
  bool have_best = false;
  for (std::size_t e = 0; e < space.encoders.size(); ++e) {
    const auto& enc = space.encoders[e];
    for (std::size_t a = 0; a < space.anchor_options.size(); ++a) {
      const auto& anchors = space.anchor_options[a];
      const double cycles = compute_cycles(enc, anchors.size, phys);
      const double rate = rate_per_anchor[a];
      const double freq =
          optimal_frequency(state.z, state.y, cycles, env.f_max_hz, phys, ctrl);
      const double g = lookup_accuracy(space, e, a);
      const SlotOutcome outcome =
          evaluate_slot(rate, freq, env.h2, enc, anchors.size, g,
                        ctrl.latency_inst_max_s, phys);
      const double psi =
          slot_objective(state, outcome.l_total, g, outcome.p_total, ctrl.v);
      if (!have_best || psi < best.objective) {
        best.encoder_index = e;
        best.anchor_index = a;
        best.encoder_id = enc.id;
        best.anchor_id = anchors.id;
        best.rate_bps = rate;
        best.freq_hz = freq;
        best.objective = psi;
        best.outcome = outcome;
        have_best = true;
      }
    }
  }
  return best;
}

}  // namespace semcom
