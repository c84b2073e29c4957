// semcom command line: run simulations, sweeps and stitching studies.
//
// Exit codes: 0 success, 1 usage error, 2 invalid config/profile,
// 3 runtime failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "semcom/config.hpp"
#include "semcom/errors.hpp"
#include "semcom/profile.hpp"
#include "semcom/rng.hpp"
#include "semcom/simulator.hpp"
#include "semcom/stitching.hpp"

namespace fs = std::filesystem;

namespace {

struct CliOptions {
  std::string config_path;
  std::string profile_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::uint64_t horizon = 0;
  bool seed_set = false;
  bool horizon_set = false;
};

semcom::SimConfig load_effective_config(const CliOptions& opt) {
  semcom::SimConfig cfg = opt.config_path.empty()
                              ? semcom::parse_config("", "<defaults>")
                              : semcom::load_config(opt.config_path);
  // Flag overrides beat file values which beat defaults.
  if (opt.seed_set) cfg.seed = opt.seed;
  if (opt.horizon_set) cfg.horizon = opt.horizon;
  if (!opt.profile_path.empty()) cfg.profile_path = opt.profile_path;
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  return cfg;
}

semcom::ActionSpace load_space(const semcom::SimConfig& cfg) {
  if (cfg.profile_path.empty())
    throw semcom::ConfigError(
        "no profile given; pass --profile or set [cli_io] profile");
  return semcom::load_profile(cfg.profile_path);
}

fs::path ensure_out_dir(const semcom::SimConfig& cfg) {
  const fs::path dir = cfg.out_dir.empty() ? fs::path("out") : fs::path(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

int cmd_run(const CliOptions& opt) {
  const auto cfg = load_effective_config(opt);
  const auto space = load_space(cfg);
  const auto record = semcom::run(cfg, space);
  const auto dir = ensure_out_dir(cfg);
  if (!record.rows.empty())
    semcom::write_timeseries_csv(record, dir / "slots.csv");
  std::printf("slots: %zu\n", record.rows.size());
  auto show = [](const char* name, const std::optional<double>& v) {
    if (v)
      std::printf("%s: %.6g\n", name, *v);
    else
      std::printf("%s: n/a\n", name);
  };
  show("avg_power_w", record.avg_power);
  show("avg_latency_s", record.avg_latency);
  show("avg_accuracy", record.avg_accuracy);
  show("violation_freq", record.violation_freq);
  return 0;
}

int cmd_sweep(const CliOptions& opt) {
  const auto cfg = load_effective_config(opt);
  const auto space = load_space(cfg);
  const auto result = semcom::sweep(cfg, space);
  const auto dir = ensure_out_dir(cfg);
  semcom::write_sweep_csv(result, dir / "sweep.csv");
  semcom::write_sweep_summary_csv(result, dir / "sweep_summary.csv");
  std::printf("sweep cells: %zu, summary rows: %zu\n", result.cells.size(),
              result.summary.size());
  return 0;
}

int cmd_stitch_profile(const CliOptions& opt) {
  const auto cfg = load_effective_config(opt);
  const auto& st = cfg.stitching;
  const auto dataset = semcom::generate_dataset(
      st.num_classes, st.samples_per_class, st.latent_dim, st.spread, st.dataset_seed);
  std::vector<semcom::SyntheticEncoder> encoders;
  for (std::size_t i = 0; i < st.encoder_ids.size(); ++i)
    encoders.push_back(semcom::make_synthetic_encoder(
        st.encoder_ids[i], st.latent_dim, st.encoder_scales[i],
        st.encoder_noise_sigmas[i],
        semcom::rng::combine(st.dataset_seed, 1000 + i)));
  const auto table = semcom::build_accuracy_profile(
      encoders, st.encoder_flops, st.anchor_sizes, dataset, st.seeds, st.ridge_lambda);
  const auto dir = ensure_out_dir(cfg);
  semcom::save_profile(dir / "profile.csv", table);
  std::printf("profile: %zu encoders x %zu anchor sizes -> %s\n",
              table.encoders.size(), table.anchor_sizes.size(),
              (dir / "profile.csv").string().c_str());
  return 0;
}

int cmd_validate(const CliOptions& opt) {
  const auto cfg = load_effective_config(opt);
  if (!cfg.profile_path.empty()) {
    const auto space = load_space(cfg);
    semcom::restrict_action_space(space, cfg.anchor_sizes);
  }
  std::printf("ok\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goal-oriented semantic communication simulator"};
  app.require_subcommand(1);

  CliOptions opt;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "Configuration file");
    cmd->add_option("--profile", opt.profile_path, "Action-space profile file");
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_option("--seed", opt.seed, "Simulation seed (overrides config)")
        ->each([&](const std::string&) { opt.seed_set = true; });
    cmd->add_option("--horizon", opt.horizon, "Slot count (overrides config)")
        ->each([&](const std::string&) { opt.horizon_set = true; });
  };

  auto* run_cmd = app.add_subcommand("run", "Single simulation run, slot CSV export");
  auto* sweep_cmd = app.add_subcommand("sweep", "Constraint-grid sweep, aggregate CSV export");
  auto* stitch_cmd = app.add_subcommand("stitch-profile",
                                        "Build an accuracy profile from synthetic encoders");
  auto* validate_cmd = app.add_subcommand("validate-config",
                                          "Parse and cross-check config (and profile if given)");
  for (auto* cmd : {run_cmd, sweep_cmd, stitch_cmd, validate_cmd}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(opt);
    if (sweep_cmd->parsed()) return cmd_sweep(opt);
    if (stitch_cmd->parsed()) return cmd_stitch_profile(opt);
    if (validate_cmd->parsed()) return cmd_validate(opt);
    std::cerr << app.help();
    return 1;
  } catch (const semcom::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
