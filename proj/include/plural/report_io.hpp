#pragma once

#include <string>
#include <vector>

#include "plural/simulator.hpp"

namespace plural {

// Fixed 12-significant-digit rendering shared by every text output.
std::string format_number(double v);

// Report as a YAML mapping, with a model_check block when check is given.
// Field order is fixed, so identical reports render to identical bytes.
std::string report_to_yaml(const sim::SimReport& r, const sim::ModelDeviation* check = nullptr);
std::string deviation_to_yaml(const sim::ModelDeviation& d);
std::string events_to_yaml(const std::vector<sim::SimEvent>& events);

// CSV header and one row per report, for aggregating runs over m or seeds.
// Per-core vectors are summarized as mean / min utilization.
std::string report_csv_header();
std::string report_csv_row(const sim::SimReport& r);

}  // namespace plural
