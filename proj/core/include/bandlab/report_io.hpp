#pragma once

#include <map>
#include <string>

#include "bandlab/montecarlo.hpp"

namespace bandlab {

// Line-delimited flat records: "key = value", numbers at 17 significant
// digits, lines sorted by key. parse(serialize(r)) == r bit-for-bit.
std::string serialize_report(const ExperimentReport& report);

// Key-value view of a serialized report (round-trip helper; raw strings).
std::map<std::string, std::string> parse_flat_record(const std::string& text);

// Re-emit a parsed record in canonical form.
std::string serialize_flat_record(const std::map<std::string, std::string>& record);

std::string format_g17(double v);

std::string sweep_csv(const SweepTable& table);

}  // namespace bandlab
