#include "plural/comm.hpp"

#include <cmath>

#include "plural/errors.hpp"
#include "plural/scaling.hpp"

namespace plural::comm {
namespace {

void check(double area, std::uint64_t m) {
  if (!std::isfinite(area) || area <= 0.0) throw DomainError("area must be positive and finite");
  if (m < 1) throw DomainError("core count m must be >= 1");
}

double ensemble_rate(double area, std::uint64_t m) {
  return std::sqrt(static_cast<double>(m) * area);
}

}  // namespace

double switch_stages(std::uint64_t m) {
  if (m < 1) throw DomainError("core count m must be >= 1");
  return std::log2(static_cast<double>(m));
}

double sched_msg_energy(double area) {
  check(area, 1);
  return std::sqrt(area);
}

double sched_power(double area, std::uint64_t m) {
  check(area, m);
  return sched_msg_energy(area) * ensemble_rate(area, m);
}

double mem_access_energy(double area, std::uint64_t m) {
  check(area, m);
  return std::sqrt(area) + switch_stages(m);
}

double mem_power(double area, std::uint64_t m) {
  check(area, m);
  return mem_access_energy(area, m) * ensemble_rate(area, m);
}

CommMetrics comm_metrics(const ChipSpec& spec, std::uint64_t m) {
  const EnsembleMetrics row = ensemble_metrics(spec, m);
  CommMetrics c;
  c.m = m;
  c.sched_msg_energy = sched_msg_energy(spec.area);
  c.sched_power = sched_power(spec.area, m);
  c.mem_access_energy = mem_access_energy(spec.area, m);
  c.mem_power = mem_power(spec.area, m);
  c.compute_power = row.power;
  c.total_power = c.compute_power + c.sched_power + c.mem_power;
  c.ensemble_perf = row.ensemble_perf;
  c.perf_per_total_power = c.ensemble_perf / c.total_power;
  return c;
}

}  // namespace plural::comm
