#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ianet/bottleneck.hpp"
#include "ianet/bounds.hpp"
#include "ianet/eia.hpp"
#include "ianet/experiments.hpp"
#include "ianet/network.hpp"

namespace ianet {

using json = nlohmann::json;

// Shortest round-trip decimal form, shared by JSON and CSV emitters so both
// are deterministic and re-parse to the same double.
std::string format_double(double value);

// Throws ConfigError naming `path.key` when j holds a key outside `allowed`.
void check_keys(const json& j, const std::string& path, const std::vector<std::string>& allowed);

json to_json(const PlacementSpec& spec);
json to_json(const AttenuationSpec& spec);
json to_json(const NetworkConfig& config);
json to_json(const NodeLayout& layout);
json to_json(const ChannelGains& gains);
json to_json(const LimitEstimate& estimate);
json to_json(const CapacityBracket& bracket);
json to_json(const EiaReport& report);
json to_json(const ExperimentRow& row);
json to_json(const ExperimentReport& report);

// Bottleneck summary (counts and U/V), not the link list; links go to CSV.
json analysis_to_json(const BottleneckSet& set, const UVStats& uv, const std::string& rate_rule);

PlacementSpec placement_from_json(const json& j, const std::string& path);
AttenuationSpec attenuation_from_json(const json& j, const std::string& path);
NetworkConfig network_from_json(const json& j, const std::string& path = "network");
NodeLayout layout_from_json(const json& j);
ChannelGains gains_from_json(const json& j);

// Reads the "sweep" section against a parsed network base.
SweepConfig sweep_from_json(const json& root);

// Applies key=value overrides to a config document; keys are dotted paths,
// values parsed as JSON with a bare-string fallback.
void apply_overrides(json& config, const std::vector<std::string>& overrides);

void write_layout_csv(std::ostream& out, const NodeLayout& layout);
void write_gains_csv(std::ostream& out, const ChannelGains& gains);
void write_links_csv(std::ostream& out, const BottleneckSet& set, const RateMatrix& s);
void write_estimate_csv(std::ostream& out, const LimitEstimate& estimate);
void write_bracket_csv(std::ostream& out, const CapacityBracket& bracket, std::size_t n);
void write_eia_csv(std::ostream& out, const EiaReport& report);
void write_trace_csv(std::ostream& out, const std::vector<SlotRecord>& trace);
void write_sweep_summary_csv(std::ostream& out, const ExperimentReport& report);
void write_sweep_replicates_csv(std::ostream& out, const ExperimentReport& report);

}  // namespace ianet
