#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "semcom/channel.hpp"
#include "semcom/config.hpp"
#include "semcom/controller.hpp"
#include "semcom/io.hpp"
#include "semcom/lambert_w.hpp"
#include "semcom/profile.hpp"
#include "semcom/relrep.hpp"
#include "semcom/simulator.hpp"
#include "semcom/stitching.hpp"
#include "semcom/system_model.hpp"

namespace py = pybind11;
using namespace semcom;

namespace {

py::dict record_to_dict(const RunRecord& record) {
  const std::size_t n = record.rows.size();
  py::list encoder_ids, anchor_ids;
  Eigen::VectorXd rate(n), freq(n), p_u(n), p_c(n), l_u(n), l_c(n), l(n), g(n),
      viol(n), z(n), q(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = record.rows[i];
    encoder_ids.append(r.encoder_id);
    anchor_ids.append(r.anchor_id);
    const auto k = static_cast<Eigen::Index>(i);
    rate[k] = r.rate_bps;
    freq[k] = r.freq_hz;
    p_u[k] = r.p_u;
    p_c[k] = r.p_c;
    l_u[k] = r.l_u;
    l_c[k] = r.l_c;
    l[k] = r.l_total;
    g[k] = r.accuracy;
    viol[k] = r.violation ? 1.0 : 0.0;
    z[k] = r.z;
    q[k] = r.q;
    y[k] = r.y;
  }
  py::dict out;
  out["encoder"] = encoder_ids;
  out["anchors"] = anchor_ids;
  out["R"] = rate;
  out["f"] = freq;
  out["p_u"] = p_u;
  out["p_c"] = p_c;
  out["L_u"] = l_u;
  out["L_c"] = l_c;
  out["L"] = l;
  out["G"] = g;
  out["violation"] = viol;
  out["Z"] = z;
  out["Q"] = q;
  out["Y"] = y;
  py::dict averages;
  averages["avg_power"] = record.avg_power ? py::cast(*record.avg_power) : py::none();
  averages["avg_latency"] =
      record.avg_latency ? py::cast(*record.avg_latency) : py::none();
  averages["avg_accuracy"] =
      record.avg_accuracy ? py::cast(*record.avg_accuracy) : py::none();
  averages["violation_freq"] =
      record.violation_freq ? py::cast(*record.violation_freq) : py::none();
  out["averages"] = averages;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relative-representation semantic communication simulator";

  // --- relative representations -------------------------------------------
  py::class_<AnchorSet>(m, "AnchorSet")
      .def(py::init<>())
      .def_readwrite("id", &AnchorSet::id)
      .def_readwrite("anchor_ids", &AnchorSet::anchor_ids)
      .def_readwrite("anchors", &AnchorSet::anchors)
      .def_property_readonly("size", &AnchorSet::size)
      .def_property_readonly("dim", &AnchorSet::dim);

  py::class_<RelRep>(m, "RelRep")
      .def_readonly("anchor_set_id", &RelRep::anchor_set_id)
      .def_readonly("scores", &RelRep::scores);

  m.def("cosine_sim", &cosine_sim, py::arg("a"), py::arg("b"));
  m.def(
      "encode_relative",
      [](const Embedding& x, const AnchorSet& set) { return encode_relative(x, set); },
      py::arg("x"), py::arg("anchor_set"));
  m.def("encode_relative_rows", &encode_relative_rows, py::arg("xs"),
        py::arg("anchor_set"));
  m.def("select_anchors_uniform", &select_anchors_uniform, py::arg("dataset"),
        py::arg("n"), py::arg("seed"), py::arg("set_id") = "");
  m.def("save_anchor_set", &save_anchor_set, py::arg("path"), py::arg("anchor_set"));
  m.def("load_anchor_set", &load_anchor_set, py::arg("path"));

  // --- numerics -------------------------------------------------------------
  m.def("lambert_w0", &lambert_w0, py::arg("x"));

  // --- system model ----------------------------------------------------------
  py::class_<EncoderProfile>(m, "EncoderProfile")
      .def(py::init<>())
      .def(py::init([](std::string id, double flops, int latent_dim) {
             return EncoderProfile{std::move(id), flops, latent_dim};
           }),
           py::arg("id"), py::arg("flops"), py::arg("latent_dim"))
      .def_readwrite("id", &EncoderProfile::id)
      .def_readwrite("flops", &EncoderProfile::flops)
      .def_readwrite("latent_dim", &EncoderProfile::latent_dim);

  py::class_<AnchorOption>(m, "AnchorOption")
      .def(py::init<>())
      .def_readwrite("id", &AnchorOption::id)
      .def_readwrite("size", &AnchorOption::size);

  py::class_<PhysParams>(m, "PhysParams")
      .def(py::init<>())
      .def_readwrite("bandwidth_hz", &PhysParams::bandwidth_hz)
      .def_readwrite("noise_power", &PhysParams::noise_power)
      .def_readwrite("kappa", &PhysParams::kappa)
      .def_readwrite("bits_per_entry", &PhysParams::bits_per_entry)
      .def_readwrite("cycles_per_flop", &PhysParams::cycles_per_flop)
      .def_readwrite("rate_min_bps", &PhysParams::rate_min_bps)
      .def_readwrite("rate_max_bps", &PhysParams::rate_max_bps)
      .def_readwrite("freq_min_hz", &PhysParams::freq_min_hz)
      .def_readwrite("freq_max_hz", &PhysParams::freq_max_hz)
      .def("validate", &PhysParams::validate);

  py::class_<PowerBreakdown>(m, "PowerBreakdown")
      .def_readonly("uplink_w", &PowerBreakdown::uplink_w)
      .def_readonly("compute_w", &PowerBreakdown::compute_w)
      .def_readonly("total_w", &PowerBreakdown::total_w);

  py::class_<LatencyBreakdown>(m, "LatencyBreakdown")
      .def_readonly("uplink_s", &LatencyBreakdown::uplink_s)
      .def_readonly("compute_s", &LatencyBreakdown::compute_s)
      .def_readonly("total_s", &LatencyBreakdown::total_s);

  py::class_<SlotOutcome>(m, "SlotOutcome")
      .def(py::init<>())
      .def_readwrite("p_u", &SlotOutcome::p_u)
      .def_readwrite("p_c", &SlotOutcome::p_c)
      .def_readwrite("p_total", &SlotOutcome::p_total)
      .def_readwrite("l_u", &SlotOutcome::l_u)
      .def_readwrite("l_c", &SlotOutcome::l_c)
      .def_readwrite("l_total", &SlotOutcome::l_total)
      .def_readwrite("accuracy", &SlotOutcome::accuracy)
      .def_readwrite("latency_violation", &SlotOutcome::latency_violation);

  py::class_<ActionSpace>(m, "ActionSpace")
      .def(py::init<>())
      .def_readwrite("encoders", &ActionSpace::encoders)
      .def_readwrite("anchor_options", &ActionSpace::anchor_options)
      .def_readwrite("accuracy", &ActionSpace::accuracy)
      .def("validate", &ActionSpace::validate);

  m.def("compute_cycles", &compute_cycles, py::arg("encoder"),
        py::arg("n_anchors"), py::arg("params"));
  m.def("compute_power", &compute_power, py::arg("rate_bps"), py::arg("freq_hz"),
        py::arg("h2"), py::arg("params"));
  m.def("compute_latency", &compute_latency, py::arg("rate_bps"),
        py::arg("freq_hz"), py::arg("cycles"), py::arg("n_anchors"),
        py::arg("params"));
  m.def("lookup_accuracy",
        py::overload_cast<const ActionSpace&, std::size_t, std::size_t>(&lookup_accuracy),
        py::arg("space"), py::arg("encoder_index"), py::arg("anchor_index"));

  // --- channel ----------------------------------------------------------------
  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init<>())
      .def_readwrite("distance_m", &ChannelParams::distance_m)
      .def_readwrite("pathloss_exponent", &ChannelParams::pathloss_exponent)
      .def_readwrite("reference_gain_db", &ChannelParams::reference_gain_db)
      .def_readwrite("rayleigh_fading", &ChannelParams::rayleigh_fading)
      .def_readwrite("freq_cap_low_hz", &ChannelParams::freq_cap_low_hz)
      .def_readwrite("freq_cap_high_hz", &ChannelParams::freq_cap_high_hz)
      .def_readwrite("seed", &ChannelParams::seed)
      .def("path_gain", &ChannelParams::path_gain);

  py::class_<SlotEnv>(m, "SlotEnv")
      .def(py::init<>())
      .def_readwrite("h2", &SlotEnv::h2)
      .def_readwrite("f_max_hz", &SlotEnv::f_max_hz);

  m.def("draw_slot_env", &draw_slot_env, py::arg("t"), py::arg("params"));

  // --- controller ---------------------------------------------------------------
  py::class_<QueueState>(m, "QueueState")
      .def(py::init<>())
      .def(py::init([](double z, double q, double y) {
             return QueueState{z, q, y};
           }),
           py::arg("z") = 0.0, py::arg("q") = 0.0, py::arg("y") = 0.0)
      .def_readwrite("z", &QueueState::z)
      .def_readwrite("q", &QueueState::q)
      .def_readwrite("y", &QueueState::y);

  py::class_<ControlParams>(m, "ControlParams")
      .def(py::init<>())
      .def_readwrite("v", &ControlParams::v)
      .def_readwrite("eps_z", &ControlParams::eps_z)
      .def_readwrite("eps_q", &ControlParams::eps_q)
      .def_readwrite("eps_y", &ControlParams::eps_y)
      .def_readwrite("latency_avg_max_s", &ControlParams::latency_avg_max_s)
      .def_readwrite("accuracy_avg_min", &ControlParams::accuracy_avg_min)
      .def_readwrite("latency_inst_max_s", &ControlParams::latency_inst_max_s)
      .def_readwrite("violation_prob_max", &ControlParams::violation_prob_max)
      .def_readwrite("rate_log_literal", &ControlParams::rate_log_literal)
      .def("validate", &ControlParams::validate);

  py::class_<SlotDecision>(m, "SlotDecision")
      .def_readonly("encoder_index", &SlotDecision::encoder_index)
      .def_readonly("anchor_index", &SlotDecision::anchor_index)
      .def_readonly("encoder_id", &SlotDecision::encoder_id)
      .def_readonly("anchor_id", &SlotDecision::anchor_id)
      .def_readonly("rate_bps", &SlotDecision::rate_bps)
      .def_readonly("freq_hz", &SlotDecision::freq_hz)
      .def_readonly("objective", &SlotDecision::objective)
      .def_readonly("outcome", &SlotDecision::outcome);

  m.def("update_queues", &update_queues, py::arg("state"), py::arg("outcome"),
        py::arg("params"));
  m.def("optimal_rate", &optimal_rate, py::arg("z"), py::arg("y"),
        py::arg("n_anchors"), py::arg("h2"), py::arg("phys"), py::arg("ctrl"));
  m.def("optimal_frequency", &optimal_frequency, py::arg("z"), py::arg("y"),
        py::arg("cycles"), py::arg("f_max_hz"), py::arg("phys"), py::arg("ctrl"));
  m.def("slot_objective", &slot_objective, py::arg("state"), py::arg("latency_s"),
        py::arg("accuracy"), py::arg("power_w"), py::arg("v"));
  m.def("decide", &decide, py::arg("state"), py::arg("env"), py::arg("space"),
        py::arg("phys"), py::arg("ctrl"));

  // --- stitching harness -----------------------------------------------------
  py::class_<SyntheticEncoder>(m, "SyntheticEncoder")
      .def(py::init<>())
      .def_readwrite("id", &SyntheticEncoder::id)
      .def_readwrite("transform", &SyntheticEncoder::transform)
      .def_readwrite("scale", &SyntheticEncoder::scale)
      .def_readwrite("noise_sigma", &SyntheticEncoder::noise_sigma);

  py::class_<LabeledLatentDataset>(m, "LabeledLatentDataset")
      .def_readonly("latents", &LabeledLatentDataset::latents)
      .def_readonly("labels", &LabeledLatentDataset::labels)
      .def_readonly("num_classes", &LabeledLatentDataset::num_classes)
      .def_readonly("train_indices", &LabeledLatentDataset::train_indices)
      .def_readonly("val_indices", &LabeledLatentDataset::val_indices);

  py::class_<RelativeDecoder>(m, "RelativeDecoder")
      .def_readonly("anchor_set_id", &RelativeDecoder::anchor_set_id)
      .def_readonly("weights", &RelativeDecoder::weights)
      .def_readonly("bias", &RelativeDecoder::bias);

  py::class_<ProfileTable>(m, "ProfileTable")
      .def_readonly("encoders", &ProfileTable::encoders)
      .def_readonly("anchor_sizes", &ProfileTable::anchor_sizes)
      .def_readonly("accuracy", &ProfileTable::accuracy);

  m.def("random_orthogonal", &random_orthogonal, py::arg("dim"), py::arg("seed"));
  m.def("make_synthetic_encoder", &make_synthetic_encoder, py::arg("id"),
        py::arg("dim"), py::arg("scale"), py::arg("noise_sigma"), py::arg("seed"));
  m.def("generate_dataset", &generate_dataset, py::arg("num_classes"),
        py::arg("per_class"), py::arg("dim"), py::arg("spread"), py::arg("seed"));
  m.def("apply_encoder", &apply_encoder, py::arg("encoder"), py::arg("x"),
        py::arg("noise_seed"));
  m.def("apply_encoder_rows", &apply_encoder_rows, py::arg("encoder"),
        py::arg("xs"), py::arg("base_seed"));
  m.def("train_decoder", &train_decoder, py::arg("relreps"), py::arg("labels"),
        py::arg("num_classes"), py::arg("ridge_lambda"), py::arg("anchor_set_id"));
  m.def("predict_class", &predict_class, py::arg("decoder"), py::arg("scores"));
  m.def("evaluate_accuracy", &evaluate_accuracy, py::arg("decoder"),
        py::arg("encoder"), py::arg("anchors"), py::arg("dataset"),
        py::arg("noise_base_seed"));
  m.def("build_accuracy_profile", &build_accuracy_profile, py::arg("encoders"),
        py::arg("flops"), py::arg("anchor_sizes"), py::arg("dataset"),
        py::arg("seeds"), py::arg("ridge_lambda"));
  m.def("to_action_space", &to_action_space, py::arg("table"));

  // --- config / profile / simulator -------------------------------------------
  py::class_<SweepGrid>(m, "SweepGrid")
      .def(py::init<>())
      .def_readwrite("latency_avg_values", &SweepGrid::latency_avg_values)
      .def_readwrite("accuracy_avg_values", &SweepGrid::accuracy_avg_values)
      .def_readwrite("seeds", &SweepGrid::seeds);

  py::class_<StitchingParams>(m, "StitchingParams")
      .def(py::init<>())
      .def_readwrite("num_classes", &StitchingParams::num_classes)
      .def_readwrite("samples_per_class", &StitchingParams::samples_per_class)
      .def_readwrite("latent_dim", &StitchingParams::latent_dim)
      .def_readwrite("spread", &StitchingParams::spread)
      .def_readwrite("dataset_seed", &StitchingParams::dataset_seed)
      .def_readwrite("anchor_sizes", &StitchingParams::anchor_sizes)
      .def_readwrite("encoder_ids", &StitchingParams::encoder_ids)
      .def_readwrite("encoder_noise_sigmas", &StitchingParams::encoder_noise_sigmas)
      .def_readwrite("encoder_flops", &StitchingParams::encoder_flops)
      .def_readwrite("encoder_scales", &StitchingParams::encoder_scales)
      .def_readwrite("ridge_lambda", &StitchingParams::ridge_lambda)
      .def_readwrite("seeds", &StitchingParams::seeds);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("phys", &SimConfig::phys)
      .def_readwrite("channel", &SimConfig::channel)
      .def_readwrite("control", &SimConfig::control)
      .def_readwrite("horizon", &SimConfig::horizon)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("bernoulli_accuracy", &SimConfig::bernoulli_accuracy)
      .def_readwrite("anchor_sizes", &SimConfig::anchor_sizes)
      .def_readwrite("sweep", &SimConfig::sweep)
      .def_readwrite("stitching", &SimConfig::stitching)
      .def_readwrite("profile_path", &SimConfig::profile_path)
      .def_readwrite("out_dir", &SimConfig::out_dir)
      .def("validate", &SimConfig::validate);

  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", &parse_config, py::arg("text"),
        py::arg("origin") = "<string>");
  m.def("save_config", &save_config, py::arg("config"));
  m.def("load_profile", &load_profile, py::arg("path"));
  m.def("save_profile",
        py::overload_cast<const std::filesystem::path&, const ProfileTable&>(&save_profile),
        py::arg("path"), py::arg("table"));
  m.def("restrict_action_space", &restrict_action_space, py::arg("space"),
        py::arg("anchor_sizes"));

  m.def(
      "run",
      [](const SimConfig& cfg, const ActionSpace& space) {
        return record_to_dict(run(cfg, space));
      },
      py::arg("config"), py::arg("space"),
      "Simulate `config.horizon` slots; returns per-slot arrays and averages.");

  m.def(
      "sweep",
      [](const SimConfig& cfg, const ActionSpace& space) {
        const SweepResult result = sweep(cfg, space);
        py::list cells, summary;
        for (const auto& c : result.cells) {
          py::dict d;
          d["L_bar"] = c.l_bar;
          d["G_bar"] = c.g_bar;
          d["seed"] = c.seed;
          d["avg_power"] = c.avg_power;
          d["avg_latency"] = c.avg_latency;
          d["avg_accuracy"] = c.avg_accuracy;
          d["violation_freq"] = c.violation_freq;
          cells.append(d);
        }
        for (const auto& r : result.summary) {
          py::dict d;
          d["L_bar"] = r.l_bar;
          d["G_bar"] = r.g_bar;
          d["mean_power"] = r.mean_power;
          d["std_power"] = r.std_power;
          d["mean_latency"] = r.mean_latency;
          d["mean_accuracy"] = r.mean_accuracy;
          d["mean_violation_freq"] = r.mean_violation_freq;
          summary.append(d);
        }
        py::dict out;
        out["cells"] = cells;
        out["summary"] = summary;
        return out;
      },
      py::arg("config"), py::arg("space"));
}
