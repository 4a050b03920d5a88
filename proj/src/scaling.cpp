#include "plural/scaling.hpp"

#include <cmath>

#include "plural/errors.hpp"

namespace plural {
namespace {

// Power drawn by silicon of the given area clocked at freq: dynamic term
// area*freq, plus area when leakage is modeled.
double area_power(const ChipSpec& spec, double area, double freq) {
  double p = area * freq;
  if (spec.static_power_enabled) p += area;
  return p;
}

void fill_single(const ChipSpec& spec, EnsembleMetrics& row) {
  row.single_freq = std::pow(spec.area, spec.pollack_exponent);
  row.single_perf = row.single_freq / spec.cpi;
  row.single_time = spec.work * spec.cpi / row.single_freq;
  row.single_power = area_power(spec, spec.area, row.single_freq);
  row.single_energy = row.single_power * row.single_time;
}

}  // namespace

EnsembleMetrics ensemble_metrics(const ChipSpec& spec, std::uint64_t m) {
  spec.validate();
  if (m < 1) throw DomainError("core count m must be >= 1");

  EnsembleMetrics row;
  row.m = m;
  fill_single(spec, row);

  const auto md = static_cast<double>(m);
  row.core_area = spec.area / md;
  row.core_freq = std::pow(row.core_area, spec.pollack_exponent);
  row.core_perf = row.core_freq / spec.cpi;
  row.core_work = spec.work / md;

  row.ensemble_perf = md * row.core_freq / spec.cpi;
  row.compute_time = row.core_work * spec.cpi / row.core_freq;

  row.core_power = area_power(spec, row.core_area, row.core_freq);
  row.core_energy = row.core_power * row.compute_time;
  row.power = area_power(spec, spec.area, row.core_freq);
  row.energy = row.power * row.compute_time;

  row.speedup = row.single_time / row.compute_time;
  row.energydown = row.single_energy / row.energy;
  row.powerdown = row.single_power / row.power;
  row.es = row.energydown * row.speedup;
  row.es2 = row.energydown * row.speedup * row.speedup;
  row.perf_per_power = row.ensemble_perf / row.power;
  return row;
}

EnsembleMetrics single_metrics(const ChipSpec& spec) {
  return ensemble_metrics(spec, 1);
}

std::vector<EnsembleMetrics> sweep(const ChipSpec& spec,
                                   std::span<const std::uint64_t> m_values) {
  if (m_values.empty()) throw DomainError("sweep needs at least one core count");
  spec.validate();
  std::vector<EnsembleMetrics> rows;
  rows.reserve(m_values.size());
  for (auto m : m_values) rows.push_back(ensemble_metrics(spec, m));
  return rows;
}

}  // namespace plural
