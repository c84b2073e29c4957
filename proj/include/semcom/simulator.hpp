#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "semcom/config.hpp"
#include "semcom/controller.hpp"

// Time-slot loop (draw environment -> decide -> realize -> update queues)
// plus the multi-configuration sweep and CSV export.

namespace semcom {

struct SlotRow {
  std::uint64_t t = 0;
  std::string encoder_id;
  std::string anchor_id;
  double rate_bps = 0;
  double freq_hz = 0;
  double p_u = 0, p_c = 0;
  double l_u = 0, l_c = 0, l_total = 0;
  double accuracy = 0;
  bool violation = false;
  // Queue values in effect when the slot's decision was made.
  double z = 0, q = 0, y = 0;
};

struct RunRecord {
  std::vector<SlotRow> rows;
  // Absent (not NaN) for an empty horizon.
  std::optional<double> avg_power;
  std::optional<double> avg_latency;
  std::optional<double> avg_accuracy;
  std::optional<double> violation_freq;

  // Recomputes the time averages as the arithmetic mean of the rows.
  void finalize();
};

RunRecord run(const SimConfig& config, const ActionSpace& space);

// One sweep cell = one run at (L_bar, G_bar, seed); L_ist keeps the base
// config's offset above L_bar.
struct SweepCell {
  double l_bar = 0;
  double g_bar = 0;
  std::uint64_t seed = 0;
  double avg_power = 0;
  double avg_latency = 0;
  double avg_accuracy = 0;
  double violation_freq = 0;
};

struct SweepSummaryRow {
  double l_bar = 0;
  double g_bar = 0;
  double mean_power = 0;
  double std_power = 0;  // population std over seeds
  double mean_latency = 0;
  double mean_accuracy = 0;
  double mean_violation_freq = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;          // grid order: L_bar, G_bar, seed
  std::vector<SweepSummaryRow> summary;  // mean +- std over seeds per (L, G)
};

// Cells run independently (worker threads); aggregation is order-independent.
SweepResult sweep(const SimConfig& config, const ActionSpace& space);

// Slot-level CSV, schema:
// t,encoder,anchors,R,f,p_u,p_c,L_u,L_c,L,G,violation,Z,Q,Y
// Re-exporting the same record is byte-identical. Throws on empty records.
void write_timeseries_csv(const RunRecord& record, const std::filesystem::path& path);

// Per-cell CSV, schema:
// L_bar,G_bar,seed,avg_power,avg_latency,avg_accuracy,violation_freq
void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path);

// Aggregate CSV, schema:
// L_bar,G_bar,mean_power,std_power,mean_latency,mean_accuracy,mean_violation_freq
void write_sweep_summary_csv(const SweepResult& result, const std::filesystem::path& path);

// Round-trip for the slot CSV (used to re-derive averages externally).
RunRecord load_timeseries_csv(const std::filesystem::path& path);

}  // namespace semcom
