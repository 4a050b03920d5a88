#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plural/chip_spec.hpp"

namespace plural {

// One row of the ideal plural-computing parameter table: a chip of area A
// split into m equal cores running W split evenly, next to the single-core
// baseline on the same area.
struct EnsembleMetrics {
  std::uint64_t m = 1;

  // single core occupying the whole area
  double single_freq = 0;
  double single_perf = 0;
  double single_time = 0;
  double single_power = 0;
  double single_energy = 0;

  // one of the m cores
  double core_area = 0;
  double core_freq = 0;
  double core_perf = 0;
  double core_work = 0;
  double core_power = 0;
  double core_energy = 0;

  // the m-core ensemble; its frequency is core_freq and its time compute_time
  double ensemble_perf = 0;
  double compute_time = 0;
  double power = 0;
  double energy = 0;

  double speedup = 1;
  double energydown = 1;
  double powerdown = 1;
  double es = 1;
  double es2 = 1;
  double perf_per_power = 0;
};

// Baseline with m = 1. Ensemble fields mirror the single-core ones.
EnsembleMetrics single_metrics(const ChipSpec& spec);

// Throws DomainError when m == 0.
EnsembleMetrics ensemble_metrics(const ChipSpec& spec, std::uint64_t m);

// One row per entry of m_values, in input order. Empty input is a DomainError.
std::vector<EnsembleMetrics> sweep(const ChipSpec& spec,
                                   std::span<const std::uint64_t> m_values);

}  // namespace plural
