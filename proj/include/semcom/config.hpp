#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "semcom/channel.hpp"
#include "semcom/controller.hpp"
#include "semcom/system_model.hpp"

// Single human-readable configuration format: `[section]` headers mirroring
// module names, `key = value` lines, full-line comments starting with '#' or
// ';'. Every key has a documented default; unknown sections or keys are
// errors so typos cannot silently fall back to defaults.

namespace semcom {

struct SweepGrid {
  std::vector<double> latency_avg_values = {0.03, 0.04, 0.05, 0.06};
  std::vector<double> accuracy_avg_values = {0.7, 0.8, 0.9};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

  void validate() const;
};

struct StitchingParams {
  int num_classes = 10;
  int samples_per_class = 100;
  int latent_dim = 64;
  double spread = 0.1;
  std::uint64_t dataset_seed = 7;
  std::vector<int> anchor_sizes = {10, 25, 50, 100};
  std::vector<std::string> encoder_ids = {"enc_small", "enc_medium", "enc_large"};
  std::vector<double> encoder_noise_sigmas = {0.27, 0.22, 0.05};
  std::vector<double> encoder_flops = {1e7, 2.5e7, 5e7};
  std::vector<double> encoder_scales = {1.0, 1.0, 1.0};
  double ridge_lambda = 1.0;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

  void validate() const;
};

struct SimConfig {
  PhysParams phys;
  ChannelParams channel;
  ControlParams control;

  std::uint64_t horizon = 10000;
  std::uint64_t seed = 1;
  // Draw the realized per-slot accuracy as Bernoulli(G) instead of using the
  // profiled value directly.
  bool bernoulli_accuracy = false;
  // When non-empty, restrict the action space to these anchor sizes; each
  // listed size must exist in the profile.
  std::vector<int> anchor_sizes;

  SweepGrid sweep;
  StitchingParams stitching;

  // Default locations, overridable from the command line.
  std::string profile_path;
  std::string out_dir = "out";

  void validate() const;
};

// Parses and validates; missing file content means defaults. Parse errors
// carry the line number, validation errors name the violated invariant.
SimConfig load_config(const std::filesystem::path& path);
SimConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// Serializes every key (resolved values); parse(save(c)) is semantically c.
std::string save_config(const SimConfig& config);

// Applies [simulator] anchor_sizes; throws ConfigError when a requested size
// is not profiled.
ActionSpace restrict_action_space(const ActionSpace& space,
                                  const std::vector<int>& anchor_sizes);

}  // namespace semcom
