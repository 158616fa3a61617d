#include "ianet/serialize.hpp"

#include <ostream>
#include <type_traits>

#include "ianet/errors.hpp"

namespace ianet {

std::string format_double(double value) {
  return json(value).dump();  // shortest decimal that round-trips
}

void check_keys(const json& j, const std::string& path, const std::vector<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(path + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const auto& name : allowed)
      if (item.key() == name) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("unknown key '" + path + "." + item.key() + "'");
  }
}

namespace {

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double get_double(const json& j, const std::string& path, const char* key, double fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError(path + "." + key + " must be a number");
  return v->get<double>();
}

double require_double(const json& j, const std::string& path, const char* key) {
  const json* v = find(j, key);
  if (!v) throw ConfigError("missing required key '" + path + "." + key + "'");
  if (!v->is_number()) throw ConfigError(path + "." + key + " must be a number");
  return v->get<double>();
}

std::uint64_t get_uint(const json& j, const std::string& path, const char* key,
                       std::uint64_t fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer() || (!v->is_number_unsigned() && v->get<std::int64_t>() < 0))
    throw ConfigError(path + "." + key + " must be a nonnegative integer");
  return v->get<std::uint64_t>();
}

std::uint64_t require_uint(const json& j, const std::string& path, const char* key) {
  if (!find(j, key)) throw ConfigError("missing required key '" + path + "." + key + "'");
  return get_uint(j, path, key, 0);
}

std::string get_string(const json& j, const std::string& path, const char* key,
                       const std::string& fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(path + "." + key + " must be a string");
  return v->get<std::string>();
}

bool get_bool(const json& j, const std::string& path, const char* key, bool fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(path + "." + key + " must be a boolean");
  return v->get<bool>();
}

std::vector<double> get_double_vec(const json& j, const std::string& path, const char* key) {
  const json* v = find(j, key);
  if (!v) return {};
  if (!v->is_array()) throw ConfigError(path + "." + key + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& item : *v) {
    if (!item.is_number()) throw ConfigError(path + "." + key + " must be an array of numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

}  // namespace

json to_json(const PlacementSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  switch (spec.kind) {
    case PlacementKind::uniform_box:
      j["sides"] = spec.sides;
      break;
    case PlacementKind::gaussian:
      j["mean"] = spec.mean;
      j["sd"] = spec.sd;
      break;
    case PlacementKind::custom_density:
      j["origin"] = spec.origin;
      j["sides"] = spec.sides;
      j["cells"] = spec.cells;
      j["weights"] = spec.weights;
      break;
  }
  return j;
}

PlacementSpec placement_from_json(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "sides", "mean", "sd", "origin", "cells", "weights"});
  const std::string kind = get_string(j, path, "kind", "");
  if (kind.empty()) throw ConfigError("missing required key '" + path + ".kind'");

  PlacementSpec spec;
  spec.kind = placement_kind_from_string(kind);
  switch (spec.kind) {
    case PlacementKind::uniform_box:
      spec.sides = get_double_vec(j, path, "sides");
      break;
    case PlacementKind::gaussian:
      spec.mean = get_double_vec(j, path, "mean");
      spec.sd = get_double(j, path, "sd", 1.0);
      break;
    case PlacementKind::custom_density: {
      spec.origin = get_double_vec(j, path, "origin");
      spec.sides = get_double_vec(j, path, "sides");
      const json* cells = find(j, "cells");
      if (!cells || !cells->is_array())
        throw ConfigError(path + ".cells must be an array of positive integers");
      for (const auto& c : *cells) {
        if (!c.is_number_integer() || c.get<std::int64_t>() < 1)
          throw ConfigError(path + ".cells must be an array of positive integers");
        spec.cells.push_back(c.get<std::size_t>());
      }
      spec.weights = get_double_vec(j, path, "weights");
      break;
    }
  }
  spec.validate();
  return spec;
}

json to_json(const AttenuationSpec& spec) {
  return json{{"alpha", spec.alpha}, {"c_dec", spec.c_dec}, {"rho0", spec.rho0}};
}

AttenuationSpec attenuation_from_json(const json& j, const std::string& path) {
  check_keys(j, path, {"alpha", "c_dec", "rho0"});
  AttenuationSpec spec;
  spec.alpha = get_double(j, path, "alpha", spec.alpha);
  spec.c_dec = get_double(j, path, "c_dec", spec.c_dec);
  spec.rho0 = get_double(j, path, "rho0", spec.rho0);
  spec.validate();
  return spec;
}

json to_json(const NetworkConfig& config) {
  json j;
  j["n"] = config.n;
  j["dim"] = config.dim;
  j["seed"] = config.seed;
  j["fading"] = to_string(config.fading);
  j["tx_placement"] = to_json(config.tx_placement);
  j["rx_placement"] = to_json(config.rx_placement);
  j["attenuation"] = to_json(config.attenuation);
  return j;
}

NetworkConfig network_from_json(const json& j, const std::string& path) {
  check_keys(j, path,
             {"n", "dim", "seed", "fading", "tx_placement", "rx_placement", "attenuation"});
  NetworkConfig config;
  config.n = require_uint(j, path, "n");
  config.dim = get_uint(j, path, "dim", 2);
  config.seed = get_uint(j, path, "seed", 0);
  config.fading = fading_mode_from_string(get_string(j, path, "fading", "unit_modulus"));
  if (const json* p = find(j, "tx_placement"))
    config.tx_placement = placement_from_json(*p, path + ".tx_placement");
  if (const json* p = find(j, "rx_placement"))
    config.rx_placement = placement_from_json(*p, path + ".rx_placement");
  if (config.tx_placement.dimension() != config.dim ||
      config.rx_placement.dimension() != config.dim) {
    // Default unit box tracks dim when no placement was given.
    if (!find(j, "tx_placement"))
      config.tx_placement = PlacementSpec::uniform_box_spec(std::vector<double>(config.dim, 1.0));
    if (!find(j, "rx_placement"))
      config.rx_placement = PlacementSpec::uniform_box_spec(std::vector<double>(config.dim, 1.0));
  }
  if (const json* a = find(j, "attenuation"))
    config.attenuation = attenuation_from_json(*a, path + ".attenuation");
  config.validate();
  return config;
}

json to_json(const NodeLayout& layout) {
  json tx = json::array(), rx = json::array();
  for (std::size_t i = 0; i < layout.n; ++i) {
    json tp = json::array(), rp = json::array();
    for (std::size_t k = 0; k < layout.dim; ++k) {
      tp.push_back(layout.tx_at(i)[k]);
      rp.push_back(layout.rx_at(i)[k]);
    }
    tx.push_back(std::move(tp));
    rx.push_back(std::move(rp));
  }
  return json{{"n", layout.n}, {"dim", layout.dim}, {"tx", tx}, {"rx", rx}};
}

NodeLayout layout_from_json(const json& j) {
  check_keys(j, "layout", {"n", "dim", "tx", "rx"});
  NodeLayout layout;
  layout.n = require_uint(j, "layout", "n");
  layout.dim = require_uint(j, "layout", "dim");
  for (const char* side : {"tx", "rx"}) {
    const json* arr = find(j, side);
    if (!arr || !arr->is_array() || arr->size() != layout.n)
      throw ConfigError(std::string("layout.") + side + " must list n points");
    auto& coords = std::string(side) == "tx" ? layout.tx : layout.rx;
    for (const auto& point : *arr) {
      if (!point.is_array() || point.size() != layout.dim)
        throw ConfigError(std::string("layout.") + side + " points must have dim coordinates");
      for (const auto& c : point) coords.push_back(c.get<double>());
    }
  }
  return layout;
}

json to_json(const ChannelGains& gains) {
  json inr = json::array();
  for (std::size_t i = 0; i < gains.n; ++i) {
    json row = json::array();
    for (std::size_t j2 = 0; j2 < gains.n; ++j2) row.push_back(gains.inr_at(i, j2));
    inr.push_back(std::move(row));
  }
  return json{{"n", gains.n}, {"snr", gains.snr}, {"inr", inr}};
}

ChannelGains gains_from_json(const json& j) {
  check_keys(j, "gains", {"n", "snr", "inr"});
  ChannelGains gains;
  gains.n = require_uint(j, "gains", "n");
  gains.snr = get_double_vec(j, "gains", "snr");
  if (gains.snr.size() != gains.n) throw ConfigError("gains.snr must list n values");
  const json* inr = find(j, "inr");
  if (!inr || !inr->is_array() || inr->size() != gains.n)
    throw ConfigError("gains.inr must be an n-by-n array");
  for (const auto& row : *inr) {
    if (!row.is_array() || row.size() != gains.n)
      throw ConfigError("gains.inr must be an n-by-n array");
    for (const auto& v : row) gains.inr.push_back(v.get<double>());
  }
  return gains;
}

json to_json(const LimitEstimate& estimate) {
  return json{{"e_hat", estimate.e_hat},
              {"std_err", estimate.std_err},
              {"samples", estimate.samples},
              {"dropped", estimate.dropped}};
}

json to_json(const CapacityBracket& bracket) {
  json pairs = json::array();
  for (const auto& [i, j] : bracket.matched_pairs) pairs.push_back(json::array({i, j}));
  return json{{"lower", bracket.lower},
              {"upper", bracket.upper},
              {"per_user_lower", bracket.per_user_lower},
              {"per_user_upper", bracket.per_user_upper},
              {"matched_pairs", pairs}};
}

json analysis_to_json(const BottleneckSet& set, const UVStats& uv, const std::string& rate_rule) {
  return json{{"n", set.n},           {"epsilon", set.epsilon}, {"e_used", set.e_used},
              {"count", uv.count},    {"beta_hat", uv.beta_hat}, {"u", uv.u},
              {"v", uv.v},            {"rate_rule", rate_rule}};
}

json to_json(const EiaReport& report) {
  return json{{"users", report.users},
              {"noise", report.noise_on},
              {"slots", report.slots},
              {"matched_pairs", report.matched_pairs},
              {"no_matches", report.no_matches},
              {"matched_fraction", report.matched_fraction},
              {"mean_delay", report.mean_delay},
              {"residual_interference", report.residual_interference},
              {"amplitude_rel_err", report.amplitude_rel_err},
              {"effective_rate_per_user", report.effective_rate_per_user}};
}

json to_json(const ExperimentRow& row) {
  return json{{"n", row.n},
              {"replicates", row.replicates},
              {"mean_per_user_lower", row.mean_per_user_lower},
              {"mean_per_user_upper", row.mean_per_user_upper},
              {"dev_prob", row.dev_prob},
              {"tail_prob", row.tail_prob},
              {"beta_hat", row.beta_hat},
              {"beta_std_err", row.beta_std_err},
              {"var_count", row.var_count},
              {"uv_rate", row.uv_rate}};
}

json to_json(const ExperimentReport& report) {
  json rows = json::array();
  for (const ExperimentRow& row : report.rows) rows.push_back(to_json(row));
  json records = json::array();
  for (const ReplicateRecord& rec : report.records)
    records.push_back(json{{"n", rec.n},
                           {"replicate", rec.replicate},
                           {"sum_lower", rec.sum_lower},
                           {"sum_upper", rec.sum_upper},
                           {"max_s_ii", rec.max_s_ii},
                           {"bottleneck_count", rec.bottleneck_count},
                           {"u", rec.u},
                           {"v", rec.v}});
  return json{{"e_hat", report.e_hat},
              {"e_std_err", report.e_std_err},
              {"e_samples", report.e_samples},
              {"seed", report.seed},
              {"epsilon", report.epsilon},
              {"eta", report.eta},
              {"rate_rule", report.rate_rule},
              {"single_replicate", report.single_replicate},
              {"rows", rows},
              {"records", records}};
}

SweepConfig sweep_from_json(const json& root) {
  SweepConfig config;
  const json* network = find(root, "network");
  if (!network) throw ConfigError("missing required section 'network'");
  config.base = network_from_json(*network);

  const json* sweep = find(root, "sweep");
  if (!sweep) throw ConfigError("missing required section 'sweep'");
  const std::string path = "sweep";
  check_keys(*sweep, path,
             {"n_grid", "replicates", "epsilon", "eta", "e_samples", "rate_rule",
              "inflate_margin"});
  const json* grid = find(*sweep, "n_grid");
  if (!grid || !grid->is_array() || grid->empty())
    throw ConfigError("sweep.n_grid must be a nonempty array of integers");
  for (const auto& v : *grid) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 2)
      throw ConfigError("sweep.n_grid entries must be integers >= 2");
    config.n_grid.push_back(v.get<std::size_t>());
  }
  config.replicates = get_uint(*sweep, path, "replicates", 1);
  config.epsilon = require_double(*sweep, path, "epsilon");
  config.eta = get_double(*sweep, path, "eta", 0.5);
  config.e_samples = get_uint(*sweep, path, "e_samples", 1000000);
  config.rate_rule = rate_rule_from_string(get_string(*sweep, path, "rate_rule", "inflated"));
  config.inflate_margin = get_double(*sweep, path, "inflate_margin", config.epsilon);
  config.validate();
  return config;
}

void apply_overrides(json& config, const std::vector<std::string>& overrides) {
  for (const std::string& entry : overrides) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("override '" + entry + "' must look like section.key=value");
    std::string path = entry.substr(0, eq);
    const std::string raw = entry.substr(eq + 1);
    for (char& c : path)
      if (c == '.') c = '/';
    json value;
    try {
      value = json::parse(raw);
    } catch (const json::parse_error&) {
      value = raw;  // bare strings stay strings
    }
    try {
      config[json::json_pointer("/" + path)] = value;
    } catch (const json::exception& e) {
      throw ConfigError("cannot apply override '" + entry + "': " + e.what());
    }
  }
}

namespace {

void csv_row(std::ostream& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& cell : cells) {
    if (!first) out << ',';
    out << cell;
    first = false;
  }
  out << '\n';
}

std::string num(double v) { return format_double(v); }
template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
std::string num(T v) {
  return std::to_string(v);
}

}  // namespace

void write_layout_csv(std::ostream& out, const NodeLayout& layout) {
  out << "node,role";
  for (std::size_t k = 0; k < layout.dim; ++k) out << ",c" << k;
  out << '\n';
  for (std::size_t i = 0; i < layout.n; ++i) {
    out << i << ",tx";
    for (std::size_t k = 0; k < layout.dim; ++k) out << ',' << num(layout.tx_at(i)[k]);
    out << '\n';
  }
  for (std::size_t i = 0; i < layout.n; ++i) {
    out << i << ",rx";
    for (std::size_t k = 0; k < layout.dim; ++k) out << ',' << num(layout.rx_at(i)[k]);
    out << '\n';
  }
}

void write_gains_csv(std::ostream& out, const ChannelGains& gains) {
  out << "tx,rx,kind,gain\n";
  for (std::size_t i = 0; i < gains.n; ++i)
    csv_row(out, {num(i), num(i), "snr", num(gains.snr[i])});
  for (std::size_t i = 0; i < gains.n; ++i)
    for (std::size_t j = 0; j < gains.n; ++j)
      if (i != j) csv_row(out, {num(i), num(j), "inr", num(gains.inr_at(i, j))});
}

void write_links_csv(std::ostream& out, const BottleneckSet& set, const RateMatrix& s) {
  out << "i,j,s_ii,s_ij,s_jj,s_ji\n";
  for (const auto& [i, j] : set.links)
    csv_row(out, {num(std::uint64_t{i}), num(std::uint64_t{j}), num(s.at(i, i)), num(s.at(i, j)),
                  num(s.at(j, j)), num(s.at(j, i))});
}

void write_estimate_csv(std::ostream& out, const LimitEstimate& estimate) {
  out << "e_hat,std_err,samples,dropped\n";
  csv_row(out, {num(estimate.e_hat), num(estimate.std_err), num(estimate.samples),
                num(estimate.dropped)});
}

void write_bracket_csv(std::ostream& out, const CapacityBracket& bracket, std::size_t n) {
  out << "n,lower,upper,per_user_lower,per_user_upper,matched_pairs\n";
  std::string pairs;
  for (const auto& [i, j] : bracket.matched_pairs) {
    if (!pairs.empty()) pairs += ' ';
    pairs += std::to_string(i) + ':' + std::to_string(j);
  }
  csv_row(out, {num(n), num(bracket.lower), num(bracket.upper), num(bracket.per_user_lower),
                num(bracket.per_user_upper), pairs});
}

void write_eia_csv(std::ostream& out, const EiaReport& report) {
  out << "users,noise,slots,matched_pairs,matched_fraction,mean_delay,residual_interference,"
         "amplitude_rel_err";
  for (std::size_t j = 0; j < report.users; ++j) out << ",rate_" << j;
  out << '\n';
  out << report.users << ',' << (report.noise_on ? 1 : 0) << ',' << report.slots << ','
      << report.matched_pairs << ',' << num(report.matched_fraction) << ','
      << num(report.mean_delay) << ',' << num(report.residual_interference) << ','
      << num(report.amplitude_rel_err);
  for (double r : report.effective_rate_per_user) out << ',' << num(r);
  out << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<SlotRecord>& trace) {
  out << "slot,key,status,partner\n";
  for (const SlotRecord& rec : trace) {
    const char* status = rec.status == SlotStatus::matched
                             ? "matched"
                             : (rec.status == SlotStatus::stored ? "stored" : "idle");
    out << rec.slot << ',' << rec.key << ',' << status << ',';
    if (rec.status == SlotStatus::matched) out << rec.partner;
    out << '\n';
  }
}

void write_sweep_summary_csv(std::ostream& out, const ExperimentReport& report) {
  out << "n,replicates,mean_per_user_lower,mean_per_user_upper,dev_prob,tail_prob,beta_hat,"
         "beta_std_err,var_count,uv_rate\n";
  for (const ExperimentRow& row : report.rows)
    csv_row(out, {num(row.n), num(row.replicates), num(row.mean_per_user_lower),
                  num(row.mean_per_user_upper), num(row.dev_prob), num(row.tail_prob),
                  num(row.beta_hat), num(row.beta_std_err), num(row.var_count),
                  num(row.uv_rate)});
}

void write_sweep_replicates_csv(std::ostream& out, const ExperimentReport& report) {
  out << "n,replicate,sum_lower,sum_upper,max_s_ii,bottleneck_count,u,v\n";
  for (const ReplicateRecord& rec : report.records)
    csv_row(out, {num(rec.n), num(rec.replicate), num(rec.sum_lower), num(rec.sum_upper),
                  num(rec.max_s_ii), num(rec.bottleneck_count), num(rec.u), num(rec.v)});
}

}  // namespace ianet
