#include "semcom/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <thread>

#include "semcom/errors.hpp"
#include "semcom/io.hpp"
#include "semcom/rng.hpp"

namespace semcom {

namespace {
constexpr std::uint64_t kStreamBernoulli = 2;  // streams 0/1 belong to channel
}

void RunRecord::finalize() {
  if (rows.empty()) {
    avg_power.reset();
    avg_latency.reset();
    avg_accuracy.reset();
    violation_freq.reset();
    return;
  }
  double p = 0, l = 0, g = 0, v = 0;
  for (const auto& r : rows) {
    p += r.p_u + r.p_c;
    l += r.l_total;
    g += r.accuracy;
    v += r.violation ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(rows.size());
  avg_power = p / n;
  avg_latency = l / n;
  avg_accuracy = g / n;
  violation_freq = v / n;
}

RunRecord run(const SimConfig& config, const ActionSpace& space) {
  config.validate();
  const ActionSpace active = restrict_action_space(space, config.anchor_sizes);

  ChannelParams channel = config.channel;
  channel.seed = config.seed;

  RunRecord record;
  record.rows.reserve(config.horizon);
  QueueState queues;

  for (std::uint64_t t = 0; t < config.horizon; ++t) {
    const SlotEnv env = draw_slot_env(t, channel);
    const SlotDecision decision =
        decide(queues, env, active, config.phys, config.control);

    SlotOutcome outcome = decision.outcome;
    if (config.bernoulli_accuracy) {
      const double u = rng::counter_unit(config.seed, t, kStreamBernoulli);
      outcome.accuracy = u < decision.outcome.accuracy ? 1.0 : 0.0;
    }

    SlotRow row;
    row.t = t;
    row.encoder_id = decision.encoder_id;
    row.anchor_id = decision.anchor_id;
    row.rate_bps = decision.rate_bps;
    row.freq_hz = decision.freq_hz;
    row.p_u = outcome.p_u;
    row.p_c = outcome.p_c;
    row.l_u = outcome.l_u;
    row.l_c = outcome.l_c;
    row.l_total = outcome.l_total;
    row.accuracy = outcome.accuracy;
    row.violation = outcome.latency_violation;
    row.z = queues.z;
    row.q = queues.q;
    row.y = queues.y;
    record.rows.push_back(std::move(row));

    queues = update_queues(queues, outcome, config.control);
  }
  record.finalize();
  return record;
}

SweepResult sweep(const SimConfig& config, const ActionSpace& space) {
  config.validate();
  const double inst_offset =
      config.control.latency_inst_max_s - config.control.latency_avg_max_s;

  struct Cell {
    double l_bar;
    double g_bar;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (double l : config.sweep.latency_avg_values)
    for (double g : config.sweep.accuracy_avg_values)
      for (std::uint64_t s : config.sweep.seeds) cells.push_back({l, g, s});

  SweepResult result;
  result.cells.resize(cells.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      SimConfig cell_cfg = config;
      cell_cfg.control.latency_avg_max_s = cells[i].l_bar;
      cell_cfg.control.latency_inst_max_s = cells[i].l_bar + inst_offset;
      cell_cfg.control.accuracy_avg_min = cells[i].g_bar;
      cell_cfg.seed = cells[i].seed;
      const RunRecord record = run(cell_cfg, space);
      SweepCell& out = result.cells[i];
      out.l_bar = cells[i].l_bar;
      out.g_bar = cells[i].g_bar;
      out.seed = cells[i].seed;
      out.avg_power = record.avg_power.value_or(0.0);
      out.avg_latency = record.avg_latency.value_or(0.0);
      out.avg_accuracy = record.avg_accuracy.value_or(0.0);
      out.violation_freq = record.violation_freq.value_or(0.0);
    }
  };

  const unsigned n_threads =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(cells.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Aggregate over seeds; accumulate in seed-sorted order so permuting the
  // seed list leaves the summary bit-identical.
  for (double l : config.sweep.latency_avg_values) {
    for (double g : config.sweep.accuracy_avg_values) {
      std::vector<const SweepCell*> group;
      for (const auto& cell : result.cells)
        if (cell.l_bar == l && cell.g_bar == g) group.push_back(&cell);
      std::sort(group.begin(), group.end(),
                [](const SweepCell* a, const SweepCell* b) { return a->seed < b->seed; });
      SweepSummaryRow row;
      row.l_bar = l;
      row.g_bar = g;
      const double n = static_cast<double>(group.size());
      for (const auto* cell : group) {
        row.mean_power += cell->avg_power;
        row.mean_latency += cell->avg_latency;
        row.mean_accuracy += cell->avg_accuracy;
        row.mean_violation_freq += cell->violation_freq;
      }
      row.mean_power /= n;
      row.mean_latency /= n;
      row.mean_accuracy /= n;
      row.mean_violation_freq /= n;
      double var = 0;
      for (const auto* cell : group) {
        const double d = cell->avg_power - row.mean_power;
        var += d * d;
      }
      row.std_power = std::sqrt(var / n);
      result.summary.push_back(row);
    }
  }
  return result;
}

void write_timeseries_csv(const RunRecord& record, const std::filesystem::path& path) {
  if (record.rows.empty())
    throw std::invalid_argument("write_timeseries_csv: record is empty");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write slot CSV: " + path.string());
  out << "t,encoder,anchors,R,f,p_u,p_c,L_u,L_c,L,G,violation,Z,Q,Y\n";
  for (const auto& r : record.rows) {
    out << r.t << ',' << r.encoder_id << ',' << r.anchor_id << ','
        << format_double(r.rate_bps) << ',' << format_double(r.freq_hz) << ','
        << format_double(r.p_u) << ',' << format_double(r.p_c) << ','
        << format_double(r.l_u) << ',' << format_double(r.l_c) << ','
        << format_double(r.l_total) << ',' << format_double(r.accuracy) << ','
        << (r.violation ? 1 : 0) << ',' << format_double(r.z) << ','
        << format_double(r.q) << ',' << format_double(r.y) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write sweep CSV: " + path.string());
  out << "L_bar,G_bar,seed,avg_power,avg_latency,avg_accuracy,violation_freq\n";
  for (const auto& c : result.cells)
    out << format_double(c.l_bar) << ',' << format_double(c.g_bar) << ','
        << c.seed << ',' << format_double(c.avg_power) << ','
        << format_double(c.avg_latency) << ',' << format_double(c.avg_accuracy)
        << ',' << format_double(c.violation_freq) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

void write_sweep_summary_csv(const SweepResult& result,
                             const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write sweep summary CSV: " + path.string());
  out << "L_bar,G_bar,mean_power,std_power,mean_latency,mean_accuracy,"
         "mean_violation_freq\n";
  for (const auto& r : result.summary)
    out << format_double(r.l_bar) << ',' << format_double(r.g_bar) << ','
        << format_double(r.mean_power) << ',' << format_double(r.std_power)
        << ',' << format_double(r.mean_latency) << ','
        << format_double(r.mean_accuracy) << ','
        << format_double(r.mean_violation_freq) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

namespace {

double field_to_double(const std::string& f, const std::filesystem::path& path) {
  double v = 0;
  const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (res.ec != std::errc{} || res.ptr != f.data() + f.size())
    throw IoError(path.string() + ": bad numeric field '" + f + "'");
  return v;
}

}  // namespace

RunRecord load_timeseries_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open slot CSV: " + path.string());
  RunRecord record;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      if (comma == std::string::npos) {
        f.push_back(line.substr(start));
        break;
      }
      f.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (f.size() != 15)
      throw IoError(path.string() + ": expected 15 columns, got " +
                    std::to_string(f.size()));
    SlotRow r;
    r.t = static_cast<std::uint64_t>(field_to_double(f[0], path));
    r.encoder_id = f[1];
    r.anchor_id = f[2];
    r.rate_bps = field_to_double(f[3], path);
    r.freq_hz = field_to_double(f[4], path);
    r.p_u = field_to_double(f[5], path);
    r.p_c = field_to_double(f[6], path);
    r.l_u = field_to_double(f[7], path);
    r.l_c = field_to_double(f[8], path);
    r.l_total = field_to_double(f[9], path);
    r.accuracy = field_to_double(f[10], path);
    r.violation = field_to_double(f[11], path) != 0.0;
    r.z = field_to_double(f[12], path);
    r.q = field_to_double(f[13], path);
    r.y = field_to_double(f[14], path);
    record.rows.push_back(std::move(r));
  }
  record.finalize();
  return record;
}

}  // namespace semcom
