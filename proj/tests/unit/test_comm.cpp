#include <doctest.h>

#include <cmath>

#include "plural/comm.hpp"
#include "plural/errors.hpp"
#include "plural/scaling.hpp"
#include "test_util.hpp"

using namespace plural;
using namespace plural::comm;
using plural::test::rel_err;

TEST_SUITE("comm") {

TEST_CASE("scheduler message energy") {
  CHECK(sched_msg_energy(1e6) == 1000);
  CHECK(sched_msg_energy(1) == 1);
  CHECK(sched_msg_energy(4e6) == 2000);
  CHECK_THROWS_AS(sched_msg_energy(0), DomainError);
}

TEST_CASE("scheduler power") {
  CHECK(sched_power(1e6, 1024) == 3.2e7);
  CHECK(sched_power(1, 1) == 1);
  CHECK(sched_power(1e6, 16) == 4e6);
  CHECK_THROWS_AS(sched_power(1e6, 0), DomainError);
  CHECK_THROWS_AS(sched_power(-1, 4), DomainError);
}

TEST_CASE("memory access energy") {
  CHECK(mem_access_energy(1e6, 1024) == 1010);
  CHECK(mem_access_energy(1, 1) == 1);
  CHECK(mem_access_energy(1e6, 2) == 1001);
  CHECK(switch_stages(1) == 0);
  CHECK_THROWS_AS(mem_access_energy(1e6, 0), DomainError);
}

TEST_CASE("memory power") {
  CHECK(mem_power(1e6, 1024) == 3.232e7);
  CHECK(mem_power(1, 1) == 1);
  CHECK(mem_power(1e6, 1) == 1e6);
}

TEST_CASE("comm_metrics assembles the power budget") {
  ChipSpec s;
  s.area = 1e6;
  const auto one = comm_metrics(s, 1);
  CHECK(rel_err(one.total_power, 1.002e9) < 1e-15);
  CHECK(rel_err(one.perf_per_total_power, 1000 / 1.002e9) < 1e-14);

  const auto big = comm_metrics(s, 1024);
  CHECK(rel_err(big.compute_power, 3.125e7) < 1e-15);
  CHECK(rel_err(big.total_power, 9.557e7) < 1e-15);
  CHECK(big.total_power == big.compute_power + big.sched_power + big.mem_power);
  CHECK(big.compute_power == ensemble_metrics(s, 1024).power);
}

TEST_CASE("components move in opposite directions") {
  ChipSpec s;
  s.area = 1e6;
  auto prev = comm_metrics(s, 1);
  for (std::uint64_t m = 2; m <= 16384; ++m) {
    const auto c = comm_metrics(s, m);
    CHECK(c.compute_power < prev.compute_power);
    CHECK(c.sched_power > prev.sched_power);
    CHECK(c.mem_power > prev.mem_power);
    prev = c;
  }
}

TEST_CASE("performance per total power flattens") {
  ChipSpec s;
  s.area = 1e6;
  double prev = 0;
  for (std::uint64_t m = 1; m <= 16384; m *= 2) {
    const double v = comm_metrics(s, m).perf_per_total_power;
    CHECK(v >= prev);
    prev = v;
  }
  const double ratio =
      comm_metrics(s, 16384).perf_per_total_power / comm_metrics(s, 4096).perf_per_total_power;
  // 1.08727826524 by direct evaluation
  CHECK(ratio < 1.10);
  CHECK(rel_err(ratio, 1.08727826524) < 1e-10);
}

TEST_CASE("scheduler power first exceeds compute power at m = 1024") {
  ChipSpec s;
  s.area = 1e6;
  std::uint64_t crossing = 0;
  for (std::uint64_t m = 1; m <= 16384 && !crossing; m *= 2) {
    const auto c = comm_metrics(s, m);
    if (c.sched_power > c.compute_power) crossing = m;
  }
  CHECK(crossing == 1024);
}

TEST_CASE("single-core memory access costs one scheduler message") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const double a = test::log_uniform(rng, 1e-3, 1e12);
    CHECK(mem_access_energy(a, 1) == sched_msg_energy(a));
    CHECK(sched_msg_energy(a) == std::sqrt(a));
  }
}

TEST_CASE("area scaling of the power components") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    ChipSpec s;
    s.area = test::log_uniform(rng, 2.0, 1e8);
    const double k = test::log_uniform(rng, 1.0, 1e3);
    const auto m = std::uint64_t{1} << (rng() % 15);
    ChipSpec scaled = s;
    scaled.area = k * s.area;
    const auto a = comm_metrics(s, m);
    const auto b = comm_metrics(scaled, m);
    CHECK(rel_err(b.sched_power / a.sched_power, k) < 1e-12);
    CHECK(rel_err(b.compute_power / a.compute_power, std::pow(k, 1.5)) < 1e-12);
    // the log2(m) switch term does not grow with area
    const double mem = b.mem_power / a.mem_power;
    CHECK(mem >= std::sqrt(k) * (1 - 1e-12));
    CHECK(mem <= k * (1 + 1e-12));
    const double total = b.total_power / a.total_power;
    CHECK(total >= std::sqrt(k) * (1 - 1e-12));
    CHECK(total <= std::pow(k, 1.5) * (1 + 1e-12));
    if (m == 1) CHECK(total >= k * (1 - 1e-12));
  }
}

}  // TEST_SUITE
