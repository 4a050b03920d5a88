#pragma once

#include <cstdint>

#include "plural/chip_spec.hpp"

namespace plural::comm {

// Power budget of an m-core plural chip once scheduler and shared-memory
// traffic are priced in.
struct CommMetrics {
  std::uint64_t m = 1;
  double sched_msg_energy = 0;
  double sched_power = 0;
  double mem_access_energy = 0;
  double mem_power = 0;
  double compute_power = 0;
  double total_power = 0;
  double ensemble_perf = 0;
  double perf_per_total_power = 0;
};

// Switch stages crossed by one message in an m-endpoint network; 0 for m = 1.
double switch_stages(std::uint64_t m);

// One O(1)-length message crossing the chip edge: sqrt(area).
double sched_msg_energy(double area);

// Completion/initiation messages at the ensemble instruction rate
// sqrt(m*area): area*sqrt(m).
double sched_power(double area, std::uint64_t m);

// Wire plus switch fabric for one shared-memory access: sqrt(area) + log2(m).
double mem_access_energy(double area, std::uint64_t m);

// All accesses at the ensemble instruction rate: (sqrt(area)+log2 m)*sqrt(m*area).
double mem_power(double area, std::uint64_t m);

CommMetrics comm_metrics(const ChipSpec& spec, std::uint64_t m);

}  // namespace plural::comm
