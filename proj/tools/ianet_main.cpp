#include <algorithm>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ianet/errors.hpp"
#include "ianet/serialize.hpp"

namespace {

using ianet::ConfigError;
using ianet::json;

struct Invocation {
  std::string config_path;
  std::string output = "-";
  std::string format = "json";
  std::vector<std::string> overrides;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string trace_path;
  bool stamp = false;
};

json load_config(const Invocation& inv) {
  std::ifstream in(inv.config_path);
  if (!in) throw ConfigError("cannot read config file '" + inv.config_path + "'");
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
  }
  ianet::apply_overrides(config, inv.overrides);
  ianet::check_keys(config, "config",
                    {"network", "gen", "estimate_e", "analyze", "bounds", "eia", "sweep"});
  return config;
}

ianet::NetworkConfig network_of(const json& config) {
  if (!config.contains("network")) throw ConfigError("missing required section 'network'");
  return ianet::network_from_json(config.at("network"));
}

const json& section(const json& config, const char* name) {
  static const json empty = json::object();
  return config.contains(name) ? config.at(name) : empty;
}

std::uint64_t instance_of(const json& sect, const std::string& path) {
  ianet::check_keys(sect, path, {"instance"});
  return sect.value("instance", std::uint64_t{0});
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ianet::SimulationError("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw ianet::SimulationError("failed writing output file '" + path + "'");
}

void write_json(const Invocation& inv, const json& doc) {
  write_text(inv.output, doc.dump(2) + "\n");
}

// Multi-table CSV artifacts land in <prefix>.<table>.csv files.
std::string csv_prefix(const Invocation& inv) {
  if (inv.output == "-")
    throw ConfigError("csv output for this subcommand needs -o <prefix>, not stdout");
  return inv.output;
}

int run_gen(const Invocation& inv) {
  const json config = load_config(inv);
  const ianet::NetworkConfig network = network_of(config);
  const std::uint64_t instance = instance_of(section(config, "gen"), "gen");
  const ianet::NodeLayout layout = ianet::sample_layout(network, instance);
  const ianet::ChannelGains gains = ianet::compute_gains(network, layout, instance);
  if (inv.format == "json") {
    write_json(inv, json{{"instance", instance},
                         {"layout", ianet::to_json(layout)},
                         {"gains", ianet::to_json(gains)}});
  } else {
    const std::string prefix = csv_prefix(inv);
    std::ostringstream ls, gs;
    ianet::write_layout_csv(ls, layout);
    ianet::write_gains_csv(gs, gains);
    write_text(prefix + ".layout.csv", ls.str());
    write_text(prefix + ".gains.csv", gs.str());
  }
  return 0;
}

int run_estimate(const Invocation& inv) {
  const json config = load_config(inv);
  const ianet::NetworkConfig network = network_of(config);
  const json& sect = section(config, "estimate_e");
  ianet::check_keys(sect, "estimate_e", {"samples"});
  const auto samples = sect.value("samples", std::uint64_t{1000000});
  const ianet::LimitEstimate est = ianet::estimate_e(network, samples);
  if (inv.format == "json") {
    write_json(inv, ianet::to_json(est));
  } else {
    std::ostringstream out;
    ianet::write_estimate_csv(out, est);
    write_text(inv.output, out.str());
  }
  return 0;
}

int run_analyze(const Invocation& inv) {
  const json config = load_config(inv);
  const ianet::NetworkConfig network = network_of(config);
  const json& sect = section(config, "analyze");
  ianet::check_keys(sect, "analyze", {"epsilon", "instance", "e", "e_samples"});
  if (!sect.contains("epsilon"))
    throw ConfigError("missing required key 'analyze.epsilon' (bottleneck tolerance)");
  const double epsilon = sect.at("epsilon").get<double>();
  const std::uint64_t instance = sect.value("instance", std::uint64_t{0});

  double e_used;
  if (sect.contains("e")) {
    e_used = sect.at("e").get<double>();
  } else {
    const auto samples = sect.value("e_samples", std::uint64_t{1000000});
    e_used = ianet::estimate_e(network, samples).e_hat;
  }

  const ianet::NodeLayout layout = ianet::sample_layout(network, instance);
  const ianet::ChannelGains gains = ianet::compute_gains(network, layout, instance);
  const ianet::RateMatrix s = ianet::rate_matrix(gains);
  const ianet::BottleneckSet set = ianet::detect_bottlenecks(s, e_used, epsilon);
  std::vector<double> rates(network.n);
  for (std::size_t i = 0; i < network.n; ++i) rates[i] = s.at(i, i);
  const ianet::UVStats uv = ianet::uv_statistics(set, rates);

  if (inv.format == "json") {
    write_json(inv, ianet::analysis_to_json(set, uv, "ia"));
  } else {
    std::ostringstream out;
    ianet::write_links_csv(out, set, s);
    write_text(inv.output, out.str());
  }
  return 0;
}

int run_bounds(const Invocation& inv) {
  const json config = load_config(inv);
  const ianet::NetworkConfig network = network_of(config);
  const std::uint64_t instance = instance_of(section(config, "bounds"), "bounds");
  const ianet::NodeLayout layout = ianet::sample_layout(network, instance);
  const ianet::ChannelGains gains = ianet::compute_gains(network, layout, instance);
  const ianet::RateMatrix s = ianet::rate_matrix(gains);
  const ianet::CapacityBracket bracket = ianet::matching_upper_bound(gains, s);
  if (inv.format == "json") {
    json doc = ianet::to_json(bracket);
    doc["n"] = network.n;
    write_json(inv, doc);
  } else {
    std::ostringstream out;
    ianet::write_bracket_csv(out, bracket, network.n);
    write_text(inv.output, out.str());
  }
  return 0;
}

int run_eia(const Invocation& inv) {
  const json config = load_config(inv);
  const json& sect = section(config, "eia");
  ianet::check_keys(sect, "eia",
                    {"users", "phase_levels", "slots", "noise", "seed", "instance", "snr", "inr"});

  ianet::EiaConfig eia;
  eia.users = sect.value("users", std::uint64_t{2});
  eia.phase_levels = sect.value("phase_levels", std::uint64_t{2});
  if (!sect.contains("slots")) throw ConfigError("missing required key 'eia.slots'");
  eia.slots = sect.at("slots").get<std::uint64_t>();
  eia.noise_on = sect.value("noise", true);

  if (sect.contains("snr") != sect.contains("inr"))
    throw ConfigError("eia.snr and eia.inr must be given together");
  if (sect.contains("snr")) {
    json g{{"n", eia.users}, {"snr", sect.at("snr")}, {"inr", sect.at("inr")}};
    eia.gains = ianet::gains_from_json(g);
    eia.seed = sect.value("seed", std::uint64_t{0});
  } else {
    // Gains come from one sampled instance of the configured network.
    ianet::NetworkConfig network = network_of(config);
    network.n = eia.users;
    const std::uint64_t instance = sect.value("instance", std::uint64_t{0});
    const ianet::NodeLayout layout = ianet::sample_layout(network, instance);
    eia.gains = ianet::compute_gains(network, layout, instance);
    eia.seed = sect.value("seed", network.seed);
  }

  std::vector<ianet::SlotRecord> trace;
  const bool want_trace = !inv.trace_path.empty();
  const ianet::EiaReport report = ianet::run_pairing(eia, want_trace ? &trace : nullptr);
  if (want_trace) {
    std::ostringstream out;
    ianet::write_trace_csv(out, trace);
    write_text(inv.trace_path, out.str());
  }
  if (inv.format == "json") {
    write_json(inv, ianet::to_json(report));
  } else {
    std::ostringstream out;
    ianet::write_eia_csv(out, report);
    write_text(inv.output, out.str());
  }
  return 0;
}

int run_sweep_cmd(const Invocation& inv) {
  const json config = load_config(inv);
  ianet::SweepConfig sweep = ianet::sweep_from_json(config);
  sweep.threads = inv.threads;
  const ianet::ExperimentReport report = ianet::run_sweep(sweep);
  if (inv.format == "json") {
    json doc = ianet::to_json(report);
    if (inv.stamp) {
      char buf[32];
      const std::time_t now = std::time(nullptr);
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      doc["generated_at"] = buf;
    }
    write_json(inv, doc);
  } else {
    const std::string prefix = csv_prefix(inv);
    std::ostringstream ss, rs;
    ianet::write_sweep_summary_csv(ss, report);
    ianet::write_sweep_replicates_csv(rs, report);
    write_text(prefix + ".summary.csv", ss.str());
    write_text(prefix + ".replicates.csv", rs.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random interference network simulator"};
  app.require_subcommand(1);

  Invocation inv;
  int (*handler)(const Invocation&) = nullptr;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", inv.config_path, "JSON config file")->required();
    sub->add_option("-o,--output", inv.output, "Output file or prefix ('-' for stdout)");
    sub->add_option("--format", inv.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--set", inv.overrides, "Override config entries, section.key=value");
  };

  auto* gen = app.add_subcommand("gen", "Sample one network instance (layout and gains)");
  add_common(gen);
  gen->callback([&] { handler = run_gen; });

  auto* analyze = app.add_subcommand("analyze", "Detect bottleneck links and U/V statistics");
  add_common(analyze);
  analyze->callback([&] { handler = run_analyze; });

  auto* bounds = app.add_subcommand("bounds", "Sum-capacity bracket for one instance");
  add_common(bounds);
  bounds->callback([&] { handler = run_bounds; });

  auto* eia = app.add_subcommand("eia", "Run the ergodic alignment pairing simulation");
  add_common(eia);
  eia->add_option("--trace", inv.trace_path, "Write a per-slot trace CSV to this file");
  eia->callback([&] { handler = run_eia; });

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over the n grid");
  add_common(sweep);
  sweep->add_option("--threads", inv.threads, "Worker threads (results do not depend on this)");
  sweep->add_flag("--stamp", inv.stamp, "Add a generation timestamp to the JSON report");
  sweep->callback([&] { handler = run_sweep_cmd; });

  auto* estimate = app.add_subcommand("estimate-e", "Estimate the per-user rate limit E");
  add_common(estimate);
  estimate->callback([&] { handler = run_estimate; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return handler(inv);
  } catch (const ianet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
