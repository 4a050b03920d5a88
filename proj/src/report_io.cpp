#include "plural/report_io.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace plural {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

YAML::Emitter& num(YAML::Emitter& out, const char* key, double v) {
  return out << YAML::Key << key << YAML::Value << format_number(v);
}

YAML::Emitter& count(YAML::Emitter& out, const char* key, std::uint64_t v) {
  return out << YAML::Key << key << YAML::Value << v;
}

std::string finish(const YAML::Emitter& out) { return std::string(out.c_str()) + "\n"; }

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void emit_deviation(YAML::Emitter& out, const sim::ModelDeviation& d) {
  out << YAML::Key << "model_check" << YAML::Value << YAML::BeginMap;
  num(out, "speedup_measured", d.speedup_measured);
  num(out, "speedup_model", d.speedup_model);
  num(out, "speedup_deviation", d.speedup_deviation);
  num(out, "energy_ratio_measured", d.energy_ratio_measured);
  num(out, "energy_ratio_model", d.energy_ratio_model);
  num(out, "energy_deviation", d.energy_deviation);
  num(out, "power_ratio_measured", d.power_ratio_measured);
  num(out, "power_ratio_model", d.power_ratio_model);
  num(out, "power_deviation", d.power_deviation);
  out << YAML::EndMap;
}

}  // namespace

std::string report_to_yaml(const sim::SimReport& r, const sim::ModelDeviation* check) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  count(out, "m", r.m);
  num(out, "area", r.area);
  num(out, "cpi", r.cpi);
  num(out, "pollack_exponent", r.pollack_exponent);
  out << YAML::Key << "comm_costs_enabled" << YAML::Value << r.comm_costs_enabled;
  num(out, "slot_time", r.slot_time);
  count(out, "makespan_slots", r.makespan_slots);
  num(out, "makespan", r.makespan);
  count(out, "total_instructions", r.total_instructions);
  count(out, "executed_instances", r.executed_instances);
  count(out, "skipped_instances", r.skipped_instances);
  num(out, "compute_energy", r.compute_energy);
  num(out, "static_energy", r.static_energy);
  num(out, "sched_msg_energy_total", r.sched_msg_energy_total);
  num(out, "mem_msg_energy_total", r.mem_msg_energy_total);
  num(out, "total_energy", r.total_energy);
  num(out, "avg_power", r.avg_power);
  count(out, "sched_msg_count", r.sched_msg_count);
  count(out, "mem_access_count", r.mem_access_count);
  count(out, "mem_conflict_stalls", r.mem_conflict_stalls);
  num(out, "reference_makespan", r.reference_makespan);
  num(out, "reference_energy", r.reference_energy);
  num(out, "reference_avg_power", r.reference_avg_power);
  num(out, "empirical_speedup", r.empirical_speedup);
  out << YAML::Key << "per_core_busy_time" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double v : r.per_core_busy_time) out << format_number(v);
  out << YAML::EndSeq;
  out << YAML::Key << "utilization" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double v : r.utilization) out << format_number(v);
  out << YAML::EndSeq;
  if (check) emit_deviation(out, *check);
  out << YAML::EndMap;
  return finish(out);
}

std::string deviation_to_yaml(const sim::ModelDeviation& d) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  emit_deviation(out, d);
  out << YAML::EndMap;
  return finish(out);
}

std::string events_to_yaml(const std::vector<sim::SimEvent>& events) {
  YAML::Emitter out;
  out << YAML::BeginMap << YAML::Key << "events" << YAML::Value << YAML::BeginSeq;
  for (const auto& e : events) {
    out << YAML::Flow << YAML::BeginMap;
    count(out, "slot", e.slot);
    out << YAML::Key << "kind" << YAML::Value << sim::to_string(e.kind);
    out << YAML::Key << "task" << YAML::Value << e.task;
    if (e.core >= 0) out << YAML::Key << "core" << YAML::Value << e.core;
    if (e.kind == sim::EventKind::Access) {
      out << YAML::Key << "var" << YAML::Value << e.variable;
      count(out, "stall", e.stall);
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return finish(out);
}

std::string report_csv_header() {
  return "m,makespan,makespan_slots,total_instructions,executed_instances,compute_energy,"
         "static_energy,sched_msg_energy_total,mem_msg_energy_total,total_energy,avg_power,"
         "sched_msg_count,mem_access_count,mem_conflict_stalls,empirical_speedup,"
         "mean_utilization,min_utilization\n";
}

std::string report_csv_row(const sim::SimReport& r) {
  const double min_util =
      r.utilization.empty() ? 0 : *std::min_element(r.utilization.begin(), r.utilization.end());
  std::string row = std::to_string(r.m);
  row += "," + format_number(r.makespan);
  row += "," + std::to_string(r.makespan_slots);
  row += "," + std::to_string(r.total_instructions);
  row += "," + std::to_string(r.executed_instances);
  for (double v : {r.compute_energy, r.static_energy, r.sched_msg_energy_total,
                   r.mem_msg_energy_total, r.total_energy, r.avg_power})
    row += "," + format_number(v);
  row += "," + std::to_string(r.sched_msg_count);
  row += "," + std::to_string(r.mem_access_count);
  row += "," + std::to_string(r.mem_conflict_stalls);
  for (double v : {r.empirical_speedup, mean(r.utilization), min_util})
    row += "," + format_number(v);
  return row + "\n";
}

}  // namespace plural
