#include <doctest.h>

#include <cmath>
#include <vector>

#include "plural/errors.hpp"
#include "plural/scaling.hpp"
#include "test_util.hpp"

using namespace plural;
using plural::test::rel_err;

namespace {

ChipSpec demo_chip() {
  ChipSpec s;
  s.area = 1e6;
  s.work = 1;
  return s;
}

void check_same(const EnsembleMetrics& a, const EnsembleMetrics& b) {
  CHECK(a.m == b.m);
  CHECK(a.single_freq == b.single_freq);
  CHECK(a.single_time == b.single_time);
  CHECK(a.single_power == b.single_power);
  CHECK(a.single_energy == b.single_energy);
  CHECK(a.core_freq == b.core_freq);
  CHECK(a.ensemble_perf == b.ensemble_perf);
  CHECK(a.compute_time == b.compute_time);
  CHECK(a.power == b.power);
  CHECK(a.energy == b.energy);
  CHECK(a.speedup == b.speedup);
  CHECK(a.perf_per_power == b.perf_per_power);
}

}  // namespace

TEST_SUITE("scaling") {

TEST_CASE("single processor at the demonstration settings") {
  const auto r = single_metrics(demo_chip());
  CHECK(r.m == 1);
  CHECK(r.single_freq == doctest::Approx(1000).epsilon(1e-15));
  CHECK(r.single_perf == doctest::Approx(1000).epsilon(1e-15));
  CHECK(rel_err(r.single_time, 1e-3) < 1e-15);
  CHECK(rel_err(r.single_power, 1e9) < 1e-15);
  CHECK(rel_err(r.single_energy, 1e6) < 1e-15);
}

TEST_CASE("single processor with unit inputs") {
  ChipSpec s;
  s.area = 1;
  s.work = 1;
  const auto r = single_metrics(s);
  CHECK(r.single_freq == 1);
  CHECK(r.single_time == 1);
  CHECK(r.single_power == 1);
  CHECK(r.single_energy == 1);
}

TEST_CASE("generalized Pollack exponent") {
  ChipSpec s = demo_chip();
  s.pollack_exponent = 0.25;
  const auto r = single_metrics(s);
  // 10^(6/4) = 31.6227766016838
  CHECK(rel_err(r.single_freq, 31.6227766016838) < 1e-13);
  CHECK(rel_err(r.single_time, 0.0316227766016838) < 1e-13);
}

TEST_CASE("sixteen cores on the demonstration chip") {
  const auto r = ensemble_metrics(demo_chip(), 16);
  CHECK(r.core_area == 62500);
  CHECK(rel_err(r.core_freq, 250) < 1e-15);
  CHECK(rel_err(r.compute_time, 2.5e-4) < 1e-14);
  CHECK(rel_err(r.power, 2.5e8) < 1e-15);
  CHECK(rel_err(r.energy, 6.25e4) < 1e-14);
  CHECK(rel_err(r.speedup, 4) < 1e-14);
  CHECK(rel_err(r.energydown, 16) < 1e-14);
  CHECK(rel_err(r.powerdown, 4) < 1e-14);
  CHECK(rel_err(r.perf_per_power, 1.6e-5) < 1e-14);
  // per-core column of the parameter table
  CHECK(rel_err(r.core_work, 1.0 / 16) < 1e-15);
  CHECK(rel_err(r.core_energy, 1e6 / 256) < 1e-14);  // AW/m^2
  CHECK(rel_err(r.core_power, 62500.0 * 250) < 1e-14);  // (A/m) sqrt(A/m)
}

TEST_CASE("figures of merit at m = 4") {
  const auto r = ensemble_metrics(demo_chip(), 4);
  CHECK(rel_err(r.es, 8) < 1e-14);
  CHECK(rel_err(r.es2, 16) < 1e-14);
}

TEST_CASE("m = 1 ensemble equals the single processor") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto spec = test::random_spec(rng, true);
    spec.static_power_enabled = i % 2 == 0;
    const auto e = ensemble_metrics(spec, 1);
    const auto s = single_metrics(spec);
    check_same(e, s);
    CHECK(e.core_freq == e.single_freq);
    CHECK(e.compute_time == e.single_time);
    CHECK(e.power == e.single_power);
    CHECK(e.energy == e.single_energy);
    CHECK(e.speedup == 1);
    CHECK(e.energydown == 1);
    CHECK(e.powerdown == 1);
    CHECK(e.es == 1);
    CHECK(e.es2 == 1);
  }
}

TEST_CASE("closed forms of the ratios") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto spec = test::random_spec(rng, true);
    const auto m = std::uint64_t{1} << (rng() % 15);
    const auto r = ensemble_metrics(spec, m);
    const double md = static_cast<double>(m);
    const double a = spec.pollack_exponent;
    CHECK(rel_err(r.speedup, std::pow(md, 1 - a)) < 1e-12);
    CHECK(rel_err(r.energydown, md) < 1e-12);
    CHECK(rel_err(r.powerdown, std::pow(md, a)) < 1e-12);
    CHECK(rel_err(r.power * r.compute_time, r.energy) < 1e-12);
    CHECK(rel_err(r.single_power * r.single_time, r.single_energy) < 1e-12);
  }
}

TEST_CASE("square-root law at the default exponent") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const auto spec = test::random_spec(rng, false);
    const auto m = 1 + rng() % 100000;
    const auto r = ensemble_metrics(spec, m);
    const double md = static_cast<double>(m);
    CHECK(rel_err(r.speedup, std::sqrt(md)) < 1e-12);
    CHECK(rel_err(r.energydown, md) < 1e-12);
    CHECK(rel_err(r.powerdown, std::sqrt(md)) < 1e-12);
    CHECK(rel_err(r.es, md * std::sqrt(md)) < 1e-12);
    CHECK(rel_err(r.es2, md * md) < 1e-12);
    CHECK(rel_err(r.perf_per_power, md / (spec.area * spec.cpi)) < 1e-12);
  }
}

TEST_CASE("monotone in m at the default exponent") {
  const auto spec = demo_chip();
  auto prev = ensemble_metrics(spec, 1);
  for (std::uint64_t m = 2; m <= 4096; ++m) {
    const auto r = ensemble_metrics(spec, m);
    CHECK(r.speedup > prev.speedup);
    CHECK(r.energydown > prev.energydown);
    CHECK(r.power < prev.power);
    CHECK(r.energy < prev.energy);
    prev = r;
  }
}

TEST_CASE("work scaling leaves the ratios unchanged") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto spec = test::random_spec(rng, true);
    const double k = test::log_uniform(rng, 1e-3, 1e3);
    auto scaled = spec;
    scaled.work *= k;
    const auto m = 1 + rng() % 5000;
    const auto a = ensemble_metrics(spec, m);
    const auto b = ensemble_metrics(scaled, m);
    CHECK(rel_err(b.single_time, k * a.single_time) < 1e-12);
    CHECK(rel_err(b.compute_time, k * a.compute_time) < 1e-12);
    CHECK(rel_err(b.single_energy, k * a.single_energy) < 1e-12);
    CHECK(rel_err(b.energy, k * a.energy) < 1e-12);
    CHECK(rel_err(b.speedup, a.speedup) < 1e-12);
    CHECK(rel_err(b.energydown, a.energydown) < 1e-12);
    CHECK(rel_err(b.powerdown, a.powerdown) < 1e-12);
    CHECK(rel_err(b.perf_per_power, a.perf_per_power) < 1e-12);
  }
}

TEST_CASE("static power adds the area to every power term") {
  ChipSpec s = demo_chip();
  s.static_power_enabled = true;
  const auto r = ensemble_metrics(s, 16);
  CHECK(rel_err(r.single_power, 1e9 + 1e6) < 1e-15);
  CHECK(rel_err(r.power, 2.5e8 + 1e6) < 1e-15);
  CHECK(rel_err(r.core_power, 62500.0 * 250 + 62500) < 1e-15);
  CHECK(rel_err(r.energy, r.power * r.compute_time) < 1e-15);
  CHECK(r.energydown < 16);  // leakage does not shrink with m
}

TEST_CASE("sweep keeps input order") {
  const std::vector<std::uint64_t> ms{1, 4, 16};
  const auto rows = sweep(demo_chip(), ms);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].speedup == 1);
  CHECK(rel_err(rows[1].speedup, 2) < 1e-15);
  CHECK(rel_err(rows[2].speedup, 4) < 1e-15);

  const std::vector<std::uint64_t> one{1};
  check_same(sweep(demo_chip(), one).front(), single_metrics(demo_chip()));

  const std::vector<std::uint64_t> big{16384};
  const auto r = sweep(demo_chip(), big).front();
  CHECK(rel_err(r.speedup, 128) < 1e-14);
  CHECK(rel_err(r.energydown, 16384) < 1e-14);

  const std::vector<std::uint64_t> shuffled{8, 2, 32};
  const auto rs = sweep(demo_chip(), shuffled);
  CHECK(rs[0].m == 8);
  CHECK(rs[1].m == 2);
  CHECK(rs[2].m == 32);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(ensemble_metrics(demo_chip(), 0), DomainError);
  CHECK_THROWS_AS(sweep(demo_chip(), std::vector<std::uint64_t>{}), DomainError);

  auto expect_field = [](ChipSpec s, const char* field) {
    try {
      single_metrics(s);
      FAIL("expected ValidationError for " << field);
    } catch (const ValidationError& e) {
      CHECK(e.field() == field);
    }
  };
  ChipSpec s = demo_chip();
  s.area = 0;
  expect_field(s, "area");
  s = demo_chip();
  s.work = -1;
  expect_field(s, "work");
  s = demo_chip();
  s.cpi = 0;
  expect_field(s, "cpi");
  s = demo_chip();
  s.pollack_exponent = 1.0;
  expect_field(s, "pollack_exponent");
  s.pollack_exponent = 0.0;
  expect_field(s, "pollack_exponent");
  s.pollack_exponent = std::nan("");
  expect_field(s, "pollack_exponent");
}

}  // TEST_SUITE
