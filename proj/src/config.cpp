#include "semcom/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "semcom/errors.hpp"
#include "semcom/io.hpp"

namespace semcom {

void SweepGrid::validate() const {
  if (latency_avg_values.empty())
    throw ConfigError("sweep: invariant violated: latency_avg_values non-empty");
  if (accuracy_avg_values.empty())
    throw ConfigError("sweep: invariant violated: accuracy_avg_values non-empty");
  if (seeds.empty())
    throw ConfigError("sweep: invariant violated: seeds non-empty");
  for (double l : latency_avg_values)
    if (l <= 0) throw ConfigError("sweep: invariant violated: latency values > 0");
  for (double g : accuracy_avg_values)
    if (!(g > 0 && g < 1))
      throw ConfigError("sweep: invariant violated: accuracy values in (0, 1)");
}

void StitchingParams::validate() const {
  if (num_classes < 2)
    throw ConfigError("stitching: invariant violated: num_classes >= 2");
  if (samples_per_class < 2)
    throw ConfigError("stitching: invariant violated: samples_per_class >= 2");
  if (latent_dim < 2)
    throw ConfigError("stitching: invariant violated: latent_dim >= 2");
  if (spread < 0) throw ConfigError("stitching: invariant violated: spread >= 0");
  if (anchor_sizes.empty())
    throw ConfigError("stitching: invariant violated: anchor_sizes non-empty");
  for (int n : anchor_sizes)
    if (n < 1) throw ConfigError("stitching: invariant violated: anchor sizes >= 1");
  if (encoder_ids.empty())
    throw ConfigError("stitching: invariant violated: encoder_ids non-empty");
  if (encoder_noise_sigmas.size() != encoder_ids.size() ||
      encoder_flops.size() != encoder_ids.size() ||
      encoder_scales.size() != encoder_ids.size())
    throw ConfigError("stitching: invariant violated: encoder_ids, "
                      "encoder_noise_sigmas, encoder_flops and encoder_scales "
                      "must have equal lengths");
  for (double s : encoder_noise_sigmas)
    if (s < 0) throw ConfigError("stitching: invariant violated: noise sigmas >= 0");
  for (double f : encoder_flops)
    if (f <= 0) throw ConfigError("stitching: invariant violated: encoder flops > 0");
  for (double s : encoder_scales)
    if (s <= 0) throw ConfigError("stitching: invariant violated: encoder scales > 0");
  if (ridge_lambda < 0)
    throw ConfigError("stitching: invariant violated: ridge_lambda >= 0");
  if (seeds.empty())
    throw ConfigError("stitching: invariant violated: seeds non-empty");
}

void SimConfig::validate() const {
  phys.validate();
  channel.validate(phys);
  control.validate();
  sweep.validate();
  stitching.validate();
  for (int n : anchor_sizes)
    if (n < 1)
      throw ConfigError("simulator: invariant violated: anchor_sizes >= 1");
}

namespace {

struct Cursor {
  const std::string& origin;
  int line;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const Cursor& at) {
  double out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    at.fail("expected a number, got '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& v, const Cursor& at) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    // allow scientific notation for large counts (e.g. horizon = 1e5)
    const double d = parse_double(v, at);
    if (d < 0 || d != std::floor(d)) at.fail("expected a nonnegative integer, got '" + v + "'");
    return static_cast<std::uint64_t>(d);
  }
  return out;
}

int parse_int(const std::string& v, const Cursor& at) {
  const double d = parse_double(v, at);
  if (d != std::floor(d)) at.fail("expected an integer, got '" + v + "'");
  return static_cast<int>(d);
}

bool parse_bool(const std::string& v, const Cursor& at) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  at.fail("expected a boolean (true/false), got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& v, const Cursor& at) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_double(item, at));
  return out;
}

std::vector<int> parse_int_list(const std::string& v, const Cursor& at) {
  std::vector<int> out;
  for (const auto& item : split_list(v)) out.push_back(parse_int(item, at));
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& v, const Cursor& at) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(v)) out.push_back(parse_u64(item, at));
  return out;
}

}  // namespace

SimConfig parse_config(const std::string& text, const std::string& origin) {
  SimConfig cfg;
  bool latency_inst_set = false;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  Cursor at{origin, 0};

  while (std::getline(in, raw)) {
    ++at.line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') at.fail("malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system_model" && section != "channel" &&
          section != "controller" && section != "simulator" &&
          section != "sweep" && section != "stitching" && section != "cli_io")
        at.fail("unknown section '" + section + "'");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) at.fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) at.fail("empty key");
    if (section.empty()) at.fail("key '" + key + "' outside any section");

    if (section == "system_model") {
      auto& p = cfg.phys;
      if (key == "bandwidth_hz") p.bandwidth_hz = parse_double(value, at);
      else if (key == "noise_power") p.noise_power = parse_double(value, at);
      else if (key == "kappa") p.kappa = parse_double(value, at);
      else if (key == "bits_per_entry") p.bits_per_entry = parse_double(value, at);
      else if (key == "cycles_per_flop") p.cycles_per_flop = parse_double(value, at);
      else if (key == "rate_min_bps") p.rate_min_bps = parse_double(value, at);
      else if (key == "rate_max_bps") p.rate_max_bps = parse_double(value, at);
      else if (key == "freq_min_hz") p.freq_min_hz = parse_double(value, at);
      else if (key == "freq_max_hz") p.freq_max_hz = parse_double(value, at);
      else at.fail("unknown key 'system_model." + key + "'");
    } else if (section == "channel") {
      auto& c = cfg.channel;
      if (key == "distance_m") c.distance_m = parse_double(value, at);
      else if (key == "pathloss_exponent") c.pathloss_exponent = parse_double(value, at);
      else if (key == "reference_gain_db") c.reference_gain_db = parse_double(value, at);
      else if (key == "rayleigh_fading") c.rayleigh_fading = parse_bool(value, at);
      else if (key == "freq_cap_low_hz") c.freq_cap_low_hz = parse_double(value, at);
      else if (key == "freq_cap_high_hz") c.freq_cap_high_hz = parse_double(value, at);
      else at.fail("unknown key 'channel." + key + "'");
    } else if (section == "controller") {
      auto& c = cfg.control;
      if (key == "v") c.v = parse_double(value, at);
      else if (key == "eps_z") c.eps_z = parse_double(value, at);
      else if (key == "eps_q") c.eps_q = parse_double(value, at);
      else if (key == "eps_y") c.eps_y = parse_double(value, at);
      else if (key == "latency_avg_max_s") c.latency_avg_max_s = parse_double(value, at);
      else if (key == "accuracy_avg_min") c.accuracy_avg_min = parse_double(value, at);
      else if (key == "latency_inst_max_s") {
        c.latency_inst_max_s = parse_double(value, at);
        latency_inst_set = true;
      }
      else if (key == "violation_prob_max") c.violation_prob_max = parse_double(value, at);
      else if (key == "rate_log_literal") c.rate_log_literal = parse_bool(value, at);
      else at.fail("unknown key 'controller." + key + "'");
    } else if (section == "simulator") {
      if (key == "horizon") cfg.horizon = parse_u64(value, at);
      else if (key == "seed") cfg.seed = parse_u64(value, at);
      else if (key == "bernoulli_accuracy") cfg.bernoulli_accuracy = parse_bool(value, at);
      else if (key == "anchor_sizes") cfg.anchor_sizes = parse_int_list(value, at);
      else at.fail("unknown key 'simulator." + key + "'");
    } else if (section == "sweep") {
      auto& s = cfg.sweep;
      if (key == "latency_avg_values") s.latency_avg_values = parse_double_list(value, at);
      else if (key == "accuracy_avg_values") s.accuracy_avg_values = parse_double_list(value, at);
      else if (key == "seeds") s.seeds = parse_u64_list(value, at);
      else at.fail("unknown key 'sweep." + key + "'");
    } else if (section == "stitching") {
      auto& s = cfg.stitching;
      if (key == "num_classes") s.num_classes = parse_int(value, at);
      else if (key == "samples_per_class") s.samples_per_class = parse_int(value, at);
      else if (key == "latent_dim") s.latent_dim = parse_int(value, at);
      else if (key == "spread") s.spread = parse_double(value, at);
      else if (key == "dataset_seed") s.dataset_seed = parse_u64(value, at);
      else if (key == "anchor_sizes") s.anchor_sizes = parse_int_list(value, at);
      else if (key == "encoder_ids") s.encoder_ids = split_list(value);
      else if (key == "encoder_noise_sigmas") s.encoder_noise_sigmas = parse_double_list(value, at);
      else if (key == "encoder_flops") s.encoder_flops = parse_double_list(value, at);
      else if (key == "encoder_scales") s.encoder_scales = parse_double_list(value, at);
      else if (key == "ridge_lambda") s.ridge_lambda = parse_double(value, at);
      else if (key == "seeds") s.seeds = parse_u64_list(value, at);
      else at.fail("unknown key 'stitching." + key + "'");
    } else if (section == "cli_io") {
      if (key == "profile") cfg.profile_path = value;
      else if (key == "out_dir") cfg.out_dir = value;
      else at.fail("unknown key 'cli_io." + key + "'");
    }
  }

  // L_ist tracks L_bar with the default offset unless pinned explicitly.
  if (!latency_inst_set)
    cfg.control.latency_inst_max_s = cfg.control.latency_avg_max_s + 7.5e-3;

  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

namespace {

template <typename T>
std::string join_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, double>)
      out += format_double(values[i]);
    else if constexpr (std::is_same_v<T, std::string>)
      out += values[i];
    else
      out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string save_config(const SimConfig& c) {
  std::ostringstream out;
  out << "[system_model]\n";
  out << "bandwidth_hz = " << format_double(c.phys.bandwidth_hz) << "\n";
  out << "noise_power = " << format_double(c.phys.noise_power) << "\n";
  out << "kappa = " << format_double(c.phys.kappa) << "\n";
  out << "bits_per_entry = " << format_double(c.phys.bits_per_entry) << "\n";
  out << "cycles_per_flop = " << format_double(c.phys.cycles_per_flop) << "\n";
  out << "rate_min_bps = " << format_double(c.phys.rate_min_bps) << "\n";
  out << "rate_max_bps = " << format_double(c.phys.rate_max_bps) << "\n";
  out << "freq_min_hz = " << format_double(c.phys.freq_min_hz) << "\n";
  out << "freq_max_hz = " << format_double(c.phys.freq_max_hz) << "\n";
  out << "\n[channel]\n";
  out << "distance_m = " << format_double(c.channel.distance_m) << "\n";
  out << "pathloss_exponent = " << format_double(c.channel.pathloss_exponent) << "\n";
  out << "reference_gain_db = " << format_double(c.channel.reference_gain_db) << "\n";
  out << "rayleigh_fading = " << (c.channel.rayleigh_fading ? "true" : "false") << "\n";
  out << "freq_cap_low_hz = " << format_double(c.channel.freq_cap_low_hz) << "\n";
  out << "freq_cap_high_hz = " << format_double(c.channel.freq_cap_high_hz) << "\n";
  out << "\n[controller]\n";
  out << "v = " << format_double(c.control.v) << "\n";
  out << "eps_z = " << format_double(c.control.eps_z) << "\n";
  out << "eps_q = " << format_double(c.control.eps_q) << "\n";
  out << "eps_y = " << format_double(c.control.eps_y) << "\n";
  out << "latency_avg_max_s = " << format_double(c.control.latency_avg_max_s) << "\n";
  out << "accuracy_avg_min = " << format_double(c.control.accuracy_avg_min) << "\n";
  out << "latency_inst_max_s = " << format_double(c.control.latency_inst_max_s) << "\n";
  out << "violation_prob_max = " << format_double(c.control.violation_prob_max) << "\n";
  out << "rate_log_literal = " << (c.control.rate_log_literal ? "true" : "false") << "\n";
  out << "\n[simulator]\n";
  out << "horizon = " << c.horizon << "\n";
  out << "seed = " << c.seed << "\n";
  out << "bernoulli_accuracy = " << (c.bernoulli_accuracy ? "true" : "false") << "\n";
  out << "anchor_sizes = " << join_list(c.anchor_sizes) << "\n";
  out << "\n[sweep]\n";
  out << "latency_avg_values = " << join_list(c.sweep.latency_avg_values) << "\n";
  out << "accuracy_avg_values = " << join_list(c.sweep.accuracy_avg_values) << "\n";
  out << "seeds = " << join_list(c.sweep.seeds) << "\n";
  out << "\n[stitching]\n";
  out << "num_classes = " << c.stitching.num_classes << "\n";
  out << "samples_per_class = " << c.stitching.samples_per_class << "\n";
  out << "latent_dim = " << c.stitching.latent_dim << "\n";
  out << "spread = " << format_double(c.stitching.spread) << "\n";
  out << "dataset_seed = " << c.stitching.dataset_seed << "\n";
  out << "anchor_sizes = " << join_list(c.stitching.anchor_sizes) << "\n";
  out << "encoder_ids = " << join_list(c.stitching.encoder_ids) << "\n";
  out << "encoder_noise_sigmas = " << join_list(c.stitching.encoder_noise_sigmas) << "\n";
  out << "encoder_flops = " << join_list(c.stitching.encoder_flops) << "\n";
  out << "encoder_scales = " << join_list(c.stitching.encoder_scales) << "\n";
  out << "ridge_lambda = " << format_double(c.stitching.ridge_lambda) << "\n";
  out << "seeds = " << join_list(c.stitching.seeds) << "\n";
  out << "\n[cli_io]\n";
  out << "profile = " << c.profile_path << "\n";
  out << "out_dir = " << c.out_dir << "\n";
  return out.str();
}

ActionSpace restrict_action_space(const ActionSpace& space,
                                  const std::vector<int>& anchor_sizes) {
  if (anchor_sizes.empty()) return space;
  ActionSpace out;
  out.encoders = space.encoders;
  std::vector<Eigen::Index> keep;
  for (int n : anchor_sizes) {
    bool found = false;
    for (std::size_t j = 0; j < space.anchor_options.size(); ++j) {
      if (space.anchor_options[j].size == n) {
        keep.push_back(static_cast<Eigen::Index>(j));
        out.anchor_options.push_back(space.anchor_options[j]);
        found = true;
        break;
      }
    }
    if (!found)
      throw ConfigError("invariant violated: anchor size " + std::to_string(n) +
                        " requested by the config is not present in the profile");
  }
  out.accuracy.resize(space.accuracy.rows(),
                      static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    out.accuracy.col(static_cast<Eigen::Index>(j)) = space.accuracy.col(keep[j]);
  out.validate();
  return out;
}

}  // namespace semcom
