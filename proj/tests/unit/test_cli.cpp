#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "commands.hpp"
#include "m_range.hpp"
#include "plural/errors.hpp"
#include "test_util.hpp"

using namespace plural;
using namespace plural::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, Streams{out, err, false});
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) v.push_back(c);
  return v;
}

std::string column(const std::string& csv, std::size_t row, const std::string& name) {
  const auto ls = lines(csv);
  const auto header = cells(ls.at(0));
  const auto it = std::find(header.begin(), header.end(), name);
  REQUIRE(it != header.end());
  return cells(ls.at(row)).at(static_cast<std::size_t>(it - header.begin()));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("core-count ranges") {
  using V = std::vector<std::uint64_t>;
  CHECK(parse_m_range("16") == V{16});
  CHECK(parse_m_range("1,4,16") == V{1, 4, 16});
  CHECK(parse_m_range("1:16:x2") == V{1, 2, 4, 8, 16});
  CHECK(parse_m_range("1:10:x3") == V{1, 3, 9});
  CHECK(parse_m_range("2:5:+1") == V{2, 3, 4, 5});
  CHECK(parse_m_range("1:16384:x2").size() == 15);
  for (const char* bad : {"", "0", "-3", "4,2", "1,1", "4:1:x2", "1:16:x1", "1:16:+0", "1:16",
                          "a", "1:16:y2", "1,,2", "2.5", "1:16:x"})
    CHECK_THROWS_AS(parse_m_range(bad), UsageError);
}

TEST_CASE("sweep prints one row per core count") {
  const auto r = call({"sweep", "--m", "1:16384:x2"});
  CHECK(r.code == kOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 16);
  CHECK(cells(ls[0]).size() == 22);
  for (const auto& l : ls) CHECK(cells(l).size() == 22);
  CHECK(column(r.out, 5, "speedup") == "4");
  CHECK(column(r.out, 15, "energydown") == "16384");
  CHECK(column(r.out, 15, "speedup") == "128");
}

TEST_CASE("sweep honours the chip flags") {
  const auto r = call({"sweep", "--area", "4", "--work", "2", "--cpi", "2", "--m", "1"});
  CHECK(r.code == kOk);
  CHECK(column(r.out, 1, "single_time") == "2");
  CHECK(column(r.out, 1, "single_energy") == "16");
  CHECK(call({"sweep", "--alpha", "1.5"}).code == kInput);
  CHECK(call({"sweep", "--area", "-1"}).code == kInput);
  CHECK(call({"sweep", "--m", "4:1:x2"}).code == kUsage);
  CHECK(call({"sweep", "--bogus"}).code == kUsage);
}

TEST_CASE("comm-sweep adds the communication columns") {
  const auto r = call({"comm-sweep", "--m", "1024"});
  CHECK(r.code == kOk);
  CHECK(cells(lines(r.out)[0]).size() == 29);
  CHECK(column(r.out, 1, "sched_power") == "32000000");
  CHECK(column(r.out, 1, "mem_power") == "32320000");
  CHECK(column(r.out, 1, "total_power") == "95570000");
}

TEST_CASE("et2 applies transforms left to right") {
  const auto r = call({"et2", "--e", "8", "--t", "2", "stretch:2", "shrink:0.5"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("final: {energy: 1, time: 2, theta: 4, power: 0.5}") != std::string::npos);

  const auto p = call({"et2", "--e", "8", "--t", "2", "parallel:4"});
  CHECK(p.out.find("final: {energy: 2, time: 1, theta: 2, power: 2}") != std::string::npos);

  const auto c = call({"et2", "--e", "8", "--t", "2", "constrain:P0=4"});
  CHECK(c.out.find("final: {energy: 8, time: 2, theta: 32, power: 4}") != std::string::npos);

  const auto w = call({"et2", "--e", "8", "--t", "2", "stretch:0.5"});
  CHECK(w.code == kOk);
  CHECK(w.err.find("WARNING") != std::string::npos);
}

TEST_CASE("et2 rejects bad transforms without partial output") {
  for (auto bad : {"stretch", "warp:2", "stretch:abc", "constrain:X0=1", "parallel:1,2"}) {
    const auto r = call({"et2", "--e", "8", "--t", "2", "stretch:2", bad});
    CHECK(r.code == kUsage);
    CHECK(r.out.empty());
  }
  CHECK(call({"et2", "--e", "8", "--t", "2", "shrink:3"}).code == kInput);
  CHECK(call({"et2", "--e", "0", "stretch:2"}).code == kInput);
  CHECK(call({"et2"}).code == kUsage);
}

TEST_CASE("simulate") {
  const auto dup = test::data_path("dup64.yaml");
  const auto r = call({"simulate", dup, "--m", "16", "--check-model"});
  CHECK(r.code == kOk);
  CHECK(r.err.empty());
  CHECK(r.out.find("empirical_speedup: 4\n") != std::string::npos);
  CHECK(r.out.find("model_check") != std::string::npos);

  const auto csv = call({"simulate", dup, "--m", "1,4,16", "--format", "csv"});
  CHECK(csv.code == kOk);
  REQUIRE(lines(csv.out).size() == 4);
  CHECK(column(csv.out, 3, "empirical_speedup") == "4");

  const auto contended = call({"simulate", test::data_path("contended.yaml"), "--m", "2"});
  CHECK(contended.code == kOk);
  CHECK(contended.err.find("CREW write-write conflict on 'x'") != std::string::npos);

  const auto cond = test::data_path("conditional.yaml");
  const auto missing = call({"simulate", cond});
  CHECK(missing.code == kInput);
  CHECK(missing.out.empty());
  CHECK(call({"simulate", cond, "--outcome", "pick=fast"}).code == kOk);
  CHECK(call({"simulate", cond, "--outcome", "pick"}).code == kUsage);

  CHECK(call({"simulate", test::data_path("cycle.yaml")}).code == kInput);
  CHECK(call({"simulate", test::data_path("nope.yaml")}).code == kInput);
  CHECK(call({"simulate", dup, "--format", "xml"}).code == kUsage);

  const auto events = call({"simulate", test::data_path("three_task.yaml"), "--m", "2", "--emit-events"});
  CHECK(events.out.find("kind: access") != std::string::npos);
}

TEST_CASE("validate") {
  const auto ok = call({"validate", test::data_path("conditional.yaml")});
  CHECK(ok.code == kOk);
  CHECK(ok.out == "ok: 6 tasks, 9 instances, 6 edges, 5950 instructions, 0 CREW violations\n");

  const auto cyc = call({"validate", test::data_path("cycle.yaml")});
  CHECK(cyc.code == kInput);
  CHECK(cyc.err.find("A -> B -> A") != std::string::npos);

  const auto bad = call({"validate", test::data_path("bad_key.yaml")});
  CHECK(bad.code == kInput);
  CHECK(bad.err.find(":6:") != std::string::npos);
}

TEST_CASE("colored diagnostics only on request") {
  std::ostringstream out, err;
  cli::run({"validate", test::data_path("cycle.yaml")}, Streams{out, err, true});
  CHECK(err.str().find("\033[31m") != std::string::npos);
  CHECK(call({"validate", test::data_path("cycle.yaml")}).err.find('\033') == std::string::npos);
}

}  // TEST_SUITE
