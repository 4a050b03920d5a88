#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

namespace plural::et2 {

// A point on an energy-time trade-off curve. theta = energy * time^2 is the
// cost that stays constant while trading energy for delay on a fixed task.
struct State {
  double energy = 0;
  double time = 0;
  double theta = 0;

  double power() const { return energy / time; }
};

struct ParallelResult {
  State per_core;
  double ensemble_energy = 0;
  double ensemble_power = 0;
  double ensemble_time = 0;
};

// Receives non-fatal diagnostics, e.g. a stretch factor <= 1.
using WarningSink = std::function<void(std::string_view)>;

// Both arguments must be positive and finite (DomainError otherwise).
State make_state(double energy, double time);

// Run the same task over factor*time. Energy drops by factor^2, power by
// factor^3, theta is untouched. factor in (0, 1] is allowed but warned about.
State stretch_time(const State& s, double factor, const WarningSink& warn = {});

// Execute a fraction of the work at unchanged operating point: energy and time
// both scale by fraction, theta by fraction^3. fraction must lie in (0, 1].
State shrink_work(const State& s, double fraction);

// Reduced work stretched back to the original time: energy * fraction^3.
State iso_time_energy(const State& s, double fraction);

// Reduced work at the original energy: time * fraction^1.5.
State iso_energy_time(const State& s, double fraction);

// Split the task across m cores carved from the same area. Per-core time
// follows the sqrt(m) frequency drop; per-core theta is theta / m^3 (a 1/m
// share of the work) and per-core energy is read off that curve.
ParallelResult parallelize(const State& s, std::uint64_t m);

// Selections on the curve through s under one operating constraint.
State at_energy(const State& s, double energy);  // t = sqrt(theta / E0)
State at_time(const State& s, double time);      // E = theta / T0^2
State at_power(const State& s, double power);    // t = (theta / P0)^(1/3)

}  // namespace plural::et2
