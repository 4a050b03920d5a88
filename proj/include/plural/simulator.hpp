#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plural/chip_spec.hpp"
#include "plural/task_graph.hpp"

namespace plural::sim {

struct SimConfig {
  ChipSpec chip;  // chip.work is ignored; the graph defines the work
  std::uint64_t m = 1;
  std::uint64_t mem_access_stride = 5;  // every stride-th instruction touches shared memory
  std::uint32_t prealloc_depth = 1;     // per-core queue of pre-allocated tasks
  bool comm_costs_enabled = false;
  std::uint64_t seed = 0;  // arbitration of same-slot accesses to one variable
  // conditional control task id -> id of the successor it selects
  std::map<std::string, std::string> conditional_outcomes;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

struct SimReport {
  std::uint64_t m = 1;
  double area = 0;
  double cpi = 1;
  double pollack_exponent = 0.5;
  bool comm_costs_enabled = false;

  double slot_time = 0;  // cpi / f_i, duration of one instruction
  std::uint64_t makespan_slots = 0;
  double makespan = 0;

  std::uint64_t total_instructions = 0;
  std::uint64_t executed_instances = 0;
  std::uint64_t skipped_instances = 0;  // off the path chosen by conditionals

  double compute_energy = 0;
  double static_energy = 0;
  double sched_msg_energy_total = 0;
  double mem_msg_energy_total = 0;
  double total_energy = 0;
  double avg_power = 0;

  std::vector<double> per_core_busy_time;
  std::vector<double> utilization;

  std::uint64_t sched_msg_count = 0;
  std::uint64_t mem_access_count = 0;
  std::uint64_t mem_conflict_stalls = 0;  // slots lost waiting for a variable

  // same graph and configuration on one core of the full area
  double reference_makespan = 0;
  double reference_energy = 0;
  double reference_avg_power = 0;
  double empirical_speedup = 1;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

enum class EventKind { Ready, Dispatch, Preallocate, Start, Access, Complete, Control, Skip };
const char* to_string(EventKind kind);

struct SimEvent {
  std::uint64_t slot = 0;
  EventKind kind = EventKind::Ready;
  std::string task;
  int core = -1;         // -1 for scheduler-side events
  std::string variable;  // Access only
  std::uint64_t stall = 0;  // Access only: slots waited for the variable
};

struct TracedRun {
  SimReport report;
  std::vector<SimEvent> events;  // of the m-core run, in processing order
};

// Runs g on cfg.m cores and on the single-core reference. Throws GraphError
// (cycle, dangling edge), ConfigError (missing or bad conditional outcome),
// DegenerateInputError (no instructions to execute).
SimReport run(const TaskGraph& g, const SimConfig& cfg);
TracedRun run_traced(const TaskGraph& g, const SimConfig& cfg);

// Measured ratios next to the closed-form ideal model for the same chip.
// Deviations are |measured / model - 1|.
struct ModelDeviation {
  double speedup_measured = 1, speedup_model = 1, speedup_deviation = 0;
  double energy_ratio_measured = 1, energy_ratio_model = 1, energy_deviation = 0;
  double power_ratio_measured = 1, power_ratio_model = 1, power_deviation = 0;
};

// Throws UsageError when the report was not produced under cfg.
ModelDeviation compare_to_model(const SimReport& report, const SimConfig& cfg);

}  // namespace plural::sim
