#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ianet/bottleneck.hpp"
#include "ianet/bounds.hpp"
#include "ianet/eia.hpp"
#include "ianet/errors.hpp"
#include "ianet/experiments.hpp"
#include "ianet/serialize.hpp"

namespace py = pybind11;
using namespace ianet;

namespace {

NetworkConfig network_config_from_json(const std::string& text) {
  return network_from_json(json::parse(text));
}

SweepConfig sweep_config_from_json(const std::string& text) {
  return sweep_from_json(json::parse(text));
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace

PYBIND11_MODULE(_ianet, m) {
  m.doc() = "Monte Carlo tools for random Gaussian interference networks";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

  py::class_<PlacementSpec>(m, "PlacementSpec")
      .def_static("uniform_box", &PlacementSpec::uniform_box_spec, py::arg("sides"))
      .def_static("gaussian", &PlacementSpec::gaussian_spec, py::arg("mean"), py::arg("sd"))
      .def_static("density", &PlacementSpec::density_spec, py::arg("origin"), py::arg("sides"),
                  py::arg("cells"), py::arg("weights"))
      .def("dimension", &PlacementSpec::dimension)
      .def("validate", &PlacementSpec::validate);

  py::class_<AttenuationSpec>(m, "AttenuationSpec")
      .def(py::init([](double alpha, double c_dec, double rho0) {
             AttenuationSpec spec{alpha, c_dec, rho0};
             spec.validate();
             return spec;
           }),
           py::arg("alpha") = 2.0, py::arg("c_dec") = 1.0, py::arg("rho0") = 1e-3)
      .def_readwrite("alpha", &AttenuationSpec::alpha)
      .def_readwrite("c_dec", &AttenuationSpec::c_dec)
      .def_readwrite("rho0", &AttenuationSpec::rho0)
      .def("gain", &AttenuationSpec::gain, py::arg("rho"));

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_readwrite("n", &NetworkConfig::n)
      .def_readwrite("dim", &NetworkConfig::dim)
      .def_readwrite("tx_placement", &NetworkConfig::tx_placement)
      .def_readwrite("rx_placement", &NetworkConfig::rx_placement)
      .def_readwrite("attenuation", &NetworkConfig::attenuation)
      .def_readwrite("seed", &NetworkConfig::seed)
      .def_property(
          "fading", [](const NetworkConfig& c) { return to_string(c.fading); },
          [](NetworkConfig& c, const std::string& v) { c.fading = fading_mode_from_string(v); })
      .def("validate", &NetworkConfig::validate)
      .def("to_json", [](const NetworkConfig& c) { return dump(to_json(c)); });

  py::class_<NodeLayout>(m, "NodeLayout")
      .def_readonly("n", &NodeLayout::n)
      .def_readonly("dim", &NodeLayout::dim)
      .def_readonly("tx", &NodeLayout::tx)
      .def_readonly("rx", &NodeLayout::rx)
      .def("to_json", [](const NodeLayout& l) { return dump(to_json(l)); });

  py::class_<ChannelGains>(m, "ChannelGains")
      .def(py::init<>())
      .def_readwrite("n", &ChannelGains::n)
      .def_readwrite("snr", &ChannelGains::snr)
      .def_readwrite("inr", &ChannelGains::inr)
      .def("inr_at",
           [](const ChannelGains& g, std::size_t i, std::size_t j) { return g.inr_at(i, j); })
      .def("to_json", [](const ChannelGains& g) { return dump(to_json(g)); });

  py::class_<RateMatrix>(m, "RateMatrix")
      .def_readonly("n", &RateMatrix::n)
      .def_readonly("s", &RateMatrix::s)
      .def("at", [](const RateMatrix& s, std::size_t i, std::size_t j) { return s.at(i, j); });

  py::class_<LimitEstimate>(m, "LimitEstimate")
      .def_readonly("e_hat", &LimitEstimate::e_hat)
      .def_readonly("std_err", &LimitEstimate::std_err)
      .def_readonly("samples", &LimitEstimate::samples)
      .def_readonly("dropped", &LimitEstimate::dropped);

  py::class_<ProbePoint>(m, "ProbePoint")
      .def_readonly("rho", &ProbePoint::rho)
      .def_readonly("prob", &ProbePoint::prob);

  py::class_<BottleneckSet>(m, "BottleneckSet")
      .def_readonly("n", &BottleneckSet::n)
      .def_readonly("e_used", &BottleneckSet::e_used)
      .def_readonly("epsilon", &BottleneckSet::epsilon)
      .def_readonly("links", &BottleneckSet::links)
      .def("beta_hat", &BottleneckSet::beta_hat);

  py::class_<UVStats>(m, "UVStats")
      .def_readonly("u", &UVStats::u)
      .def_readonly("v", &UVStats::v)
      .def_readonly("count", &UVStats::count)
      .def_readonly("beta_hat", &UVStats::beta_hat);

  py::class_<PairBound>(m, "PairBound")
      .def_readonly("bound", &PairBound::bound)
      .def_readonly("b3_valid", &PairBound::b3_valid);

  py::class_<CovEstimate>(m, "CovEstimate")
      .def_readonly("cov", &CovEstimate::cov)
      .def_readonly("std_err", &CovEstimate::std_err)
      .def_readonly("mean_first", &CovEstimate::mean_first)
      .def_readonly("mean_second", &CovEstimate::mean_second)
      .def_readonly("replicates", &CovEstimate::replicates);

  py::class_<CapacityBracket>(m, "CapacityBracket")
      .def_readonly("lower", &CapacityBracket::lower)
      .def_readonly("upper", &CapacityBracket::upper)
      .def_readonly("per_user_lower", &CapacityBracket::per_user_lower)
      .def_readonly("per_user_upper", &CapacityBracket::per_user_upper)
      .def_readonly("matched_pairs", &CapacityBracket::matched_pairs)
      .def("to_json", [](const CapacityBracket& b) { return dump(to_json(b)); });

  py::class_<EiaConfig>(m, "EiaConfig")
      .def(py::init<>())
      .def_readwrite("users", &EiaConfig::users)
      .def_readwrite("phase_levels", &EiaConfig::phase_levels)
      .def_readwrite("slots", &EiaConfig::slots)
      .def_readwrite("gains", &EiaConfig::gains)
      .def_readwrite("noise_on", &EiaConfig::noise_on)
      .def_readwrite("seed", &EiaConfig::seed)
      .def("validate", &EiaConfig::validate);

  py::class_<EiaReport>(m, "EiaReport")
      .def_readonly("users", &EiaReport::users)
      .def_readonly("noise_on", &EiaReport::noise_on)
      .def_readonly("slots", &EiaReport::slots)
      .def_readonly("matched_pairs", &EiaReport::matched_pairs)
      .def_readonly("no_matches", &EiaReport::no_matches)
      .def_readonly("matched_fraction", &EiaReport::matched_fraction)
      .def_readonly("mean_delay", &EiaReport::mean_delay)
      .def_readonly("residual_interference", &EiaReport::residual_interference)
      .def_readonly("amplitude_rel_err", &EiaReport::amplitude_rel_err)
      .def_readonly("effective_rate_per_user", &EiaReport::effective_rate_per_user)
      .def("to_json", [](const EiaReport& r) { return dump(to_json(r)); });

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("base", &SweepConfig::base)
      .def_readwrite("n_grid", &SweepConfig::n_grid)
      .def_readwrite("replicates", &SweepConfig::replicates)
      .def_readwrite("epsilon", &SweepConfig::epsilon)
      .def_readwrite("eta", &SweepConfig::eta)
      .def_readwrite("e_samples", &SweepConfig::e_samples)
      .def_readwrite("inflate_margin", &SweepConfig::inflate_margin)
      .def_readwrite("threads", &SweepConfig::threads)
      .def_property(
          "rate_rule", [](const SweepConfig& c) { return to_string(c.rate_rule); },
          [](SweepConfig& c, const std::string& v) { c.rate_rule = rate_rule_from_string(v); })
      .def("validate", &SweepConfig::validate);

  py::class_<ExperimentRow>(m, "ExperimentRow")
      .def_readonly("n", &ExperimentRow::n)
      .def_readonly("replicates", &ExperimentRow::replicates)
      .def_readonly("mean_per_user_lower", &ExperimentRow::mean_per_user_lower)
      .def_readonly("mean_per_user_upper", &ExperimentRow::mean_per_user_upper)
      .def_readonly("dev_prob", &ExperimentRow::dev_prob)
      .def_readonly("tail_prob", &ExperimentRow::tail_prob)
      .def_readonly("beta_hat", &ExperimentRow::beta_hat)
      .def_readonly("beta_std_err", &ExperimentRow::beta_std_err)
      .def_readonly("var_count", &ExperimentRow::var_count)
      .def_readonly("uv_rate", &ExperimentRow::uv_rate);

  py::class_<ExperimentReport>(m, "ExperimentReport")
      .def_readonly("e_hat", &ExperimentReport::e_hat)
      .def_readonly("e_std_err", &ExperimentReport::e_std_err)
      .def_readonly("e_samples", &ExperimentReport::e_samples)
      .def_readonly("seed", &ExperimentReport::seed)
      .def_readonly("epsilon", &ExperimentReport::epsilon)
      .def_readonly("eta", &ExperimentReport::eta)
      .def_readonly("rate_rule", &ExperimentReport::rate_rule)
      .def_readonly("single_replicate", &ExperimentReport::single_replicate)
      .def_readonly("rows", &ExperimentReport::rows)
      .def("to_json", [](const ExperimentReport& r) { return dump(to_json(r)); });

  m.def("network_config_from_json", &network_config_from_json, py::arg("text"));
  m.def("sweep_config_from_json", &sweep_config_from_json, py::arg("text"));
  m.def("half_log_rate", &half_log_rate, py::arg("gain"));
  m.def("attenuation_gain", &attenuation_gain, py::arg("spec"), py::arg("rho"));
  m.def("sample_layout", &sample_layout, py::arg("config"), py::arg("instance") = 0);
  m.def(
      "compute_gains",
      [](const NetworkConfig& c, const NodeLayout& l, std::uint64_t instance) {
        return compute_gains(c, l, instance);
      },
      py::arg("config"), py::arg("layout"), py::arg("instance") = 0);
  m.def("rate_matrix", &rate_matrix, py::arg("gains"));
  m.def("diagonal_rates", &diagonal_rates, py::arg("config"), py::arg("instance") = 0);
  m.def("estimate_e", &estimate_e, py::arg("config"), py::arg("samples"));
  m.def("spatial_separation_probe", &spatial_separation_probe, py::arg("config"),
        py::arg("rho_grid"), py::arg("samples"));
  m.def("fit_separation_exponent", &fit_separation_exponent, py::arg("points"));

  m.def("is_bottleneck", &is_bottleneck, py::arg("s"), py::arg("e_used"), py::arg("epsilon"),
        py::arg("i"), py::arg("j"));
  m.def("detect_bottlenecks", &detect_bottlenecks, py::arg("s"), py::arg("e_used"),
        py::arg("epsilon"));
  m.def(
      "uv_statistics",
      [](const BottleneckSet& set, const std::vector<double>& rates) {
        return uv_statistics(set, rates);
      },
      py::arg("set"), py::arg("rates"));
  m.def("pair_sum_bound", &pair_sum_bound, py::arg("gains"), py::arg("s"), py::arg("i"),
        py::arg("j"));
  m.def("empirical_cov_disjoint", &empirical_cov_disjoint, py::arg("config"), py::arg("e_used"),
        py::arg("epsilon"), py::arg("replicates"),
        py::arg("indices") = std::array<std::size_t, 4>{0, 1, 2, 3}, py::arg("threads") = 1);

  m.def("ia_lower_bound", &ia_lower_bound, py::arg("s"));
  m.def("single_user_upper", &single_user_upper, py::arg("gains"));
  m.def("matching_upper_bound", &matching_upper_bound, py::arg("gains"), py::arg("s"));

  m.def(
      "run_pairing", [](const EiaConfig& c) { return run_pairing(c); }, py::arg("config"));
  m.def("measured_rate_gap", &measured_rate_gap, py::arg("report"), py::arg("s"));

  m.def("run_sweep", &run_sweep, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("tail_experiment", &tail_experiment, py::arg("config"));
  m.def("variance_scaling_experiment", [](const SweepConfig& c) {
    const VarianceFit fit = variance_scaling_experiment(c);
    py::dict out;
    out["fitted"] = fit.fitted;
    out["slope"] = fit.slope;
    out["intercept"] = fit.intercept;
    out["variances"] = fit.variances;
    return out;
  });
  m.def("uv_exceedance_experiment",
        [](const SweepConfig& c, const std::string& rule) {
          return uv_exceedance_experiment(c, rate_rule_from_string(rule));
        },
        py::arg("config"), py::arg("rule"));
  m.def("inflated_rate_profile", &inflated_rate_profile, py::arg("n"), py::arg("target_mean"));
}
