#include "plural/et2.hpp"

#include <cmath>
#include <string>

#include "plural/errors.hpp"

namespace plural::et2 {
namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void require_fraction(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw DomainError("work fraction must lie in (0, 1], got " + std::to_string(fraction));
}

}  // namespace

State make_state(double energy, double time) {
  if (!positive_finite(energy)) throw DomainError("energy must be positive and finite");
  if (!positive_finite(time)) throw DomainError("time must be positive and finite");
  return State{energy, time, energy * time * time};
}

State stretch_time(const State& s, double factor, const WarningSink& warn) {
  if (!positive_finite(factor)) throw DomainError("stretch factor must be positive");
  if (factor <= 1.0 && warn)
    warn("stretch factor " + std::to_string(factor) +
         " <= 1 trades energy for a shorter run");
  State out;
  out.time = factor * s.time;
  out.energy = s.energy / (factor * factor);
  out.theta = s.theta;
  return out;
}

State shrink_work(const State& s, double fraction) {
  require_fraction(fraction);
  State out;
  out.time = fraction * s.time;
  out.energy = fraction * s.energy;
  out.theta = fraction * fraction * fraction * s.theta;
  return out;
}

State iso_time_energy(const State& s, double fraction) {
  require_fraction(fraction);
  State out;
  out.time = s.time;
  out.energy = fraction * fraction * fraction * s.energy;
  out.theta = out.energy * out.time * out.time;
  return out;
}

State iso_energy_time(const State& s, double fraction) {
  require_fraction(fraction);
  State out;
  out.energy = s.energy;
  out.time = std::pow(fraction, 1.5) * s.time;
  out.theta = out.energy * out.time * out.time;
  return out;
}

ParallelResult parallelize(const State& s, std::uint64_t m) {
  if (m < 1) throw DomainError("core count m must be >= 1");
  const auto md = static_cast<double>(m);

  ParallelResult r;
  r.per_core.time = s.time / std::sqrt(md);
  r.per_core.theta = s.theta / (md * md * md);
  r.per_core.energy = r.per_core.theta / (r.per_core.time * r.per_core.time);

  r.ensemble_time = r.per_core.time;
  r.ensemble_energy = md * r.per_core.energy;
  r.ensemble_power = md * r.per_core.energy / r.per_core.time;
  return r;
}

State at_energy(const State& s, double energy) {
  if (!positive_finite(energy)) throw DomainError("energy constraint must be positive");
  return State{energy, std::sqrt(s.theta / energy), s.theta};
}

State at_time(const State& s, double time) {
  if (!positive_finite(time)) throw DomainError("time constraint must be positive");
  return State{s.theta / (time * time), time, s.theta};
}

State at_power(const State& s, double power) {
  if (!positive_finite(power)) throw DomainError("power constraint must be positive");
  const double t = std::cbrt(s.theta / power);
  return State{power * t, t, s.theta};
}

}  // namespace plural::et2
