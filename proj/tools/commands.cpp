#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include "m_range.hpp"
#include "plural/comm.hpp"
#include "plural/errors.hpp"
#include "plural/et2.hpp"
#include "plural/graph_io.hpp"
#include "plural/report_io.hpp"
#include "plural/scaling.hpp"
#include "plural/simulator.hpp"

namespace plural::cli {
namespace {

constexpr const char* kDefaultRange = "1:16384:x2";

struct ChipFlags {
  double area = 1e6;
  double work = 1.0;
  double alpha = 0.5;
  double cpi = 1.0;
  bool static_power = false;

  void attach(CLI::App* app, bool with_work = true) {
    app->add_option("--area", area, "total chip area A")->capture_default_str();
    if (with_work) app->add_option("--work", work, "instruction count W")->capture_default_str();
    app->add_option("--alpha", alpha, "Pollack exponent, f = area^alpha")->capture_default_str();
    app->add_option("--cpi", cpi, "cycles per instruction")->capture_default_str();
    app->add_flag("--static-power", static_power, "add leakage power equal to area");
  }

  ChipSpec spec() const {
    ChipSpec s;
    s.area = area;
    s.work = work;
    s.pollack_exponent = alpha;
    s.cpi = cpi;
    s.static_power_enabled = static_power;
    s.validate();
    return s;
  }
};

void warn(const Streams& io, const std::string& msg) {
  if (io.color)
    io.err << "\033[33mWARNING\033[0m: " << msg << "\n";
  else
    io.err << "WARNING: " << msg << "\n";
}

void error(const Streams& io, const std::string& msg) {
  if (io.color)
    io.err << "\033[31merror\033[0m: " << msg << "\n";
  else
    io.err << "error: " << msg << "\n";
}

// ---------------------------------------------------------------- sweeps

const std::vector<std::string> kEnsembleColumns = {
    "m",           "single_freq",  "single_perf", "single_time",   "single_power",
    "single_energy", "core_area",  "core_freq",   "core_perf",     "core_work",
    "core_power",  "core_energy",  "ensemble_perf", "compute_time", "power",
    "energy",      "speedup",      "energydown",  "powerdown",     "es",
    "es2",         "perf_per_power"};

const std::vector<std::string> kCommColumns = {
    "sched_msg_energy", "sched_power", "mem_access_energy", "mem_power",
    "compute_power",    "total_power", "perf_per_total_power"};

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (const auto& c : cells) line += (line.empty() ? "" : ",") + c;
  return line;
}

std::vector<std::string> ensemble_cells(const EnsembleMetrics& r) {
  std::vector<std::string> cells{std::to_string(r.m)};
  for (double v : {r.single_freq, r.single_perf, r.single_time, r.single_power, r.single_energy,
                   r.core_area, r.core_freq, r.core_perf, r.core_work, r.core_power,
                   r.core_energy, r.ensemble_perf, r.compute_time, r.power, r.energy, r.speedup,
                   r.energydown, r.powerdown, r.es, r.es2, r.perf_per_power})
    cells.push_back(format_number(v));
  return cells;
}

std::vector<std::string> comm_cells(const comm::CommMetrics& c) {
  std::vector<std::string> cells;
  for (double v : {c.sched_msg_energy, c.sched_power, c.mem_access_energy, c.mem_power,
                   c.compute_power, c.total_power, c.perf_per_total_power})
    cells.push_back(format_number(v));
  return cells;
}

void write_plot_script(const std::string& path, const std::string& default_data,
                       const std::vector<std::string>& series) {
  std::ofstream f(path);
  if (!f) throw ParseError(0, "cannot write plot script", path);
  std::string cols;
  for (const auto& s : series) cols += (cols.empty() ? "" : " ") + s;
  f << "# gnuplot -e \"datafile='" << default_data << "'\" " << path << "\n"
    << "if (!exists(\"datafile\")) datafile = '" << default_data << "'\n"
    << "set datafile separator ','\n"
    << "set logscale xy\n"
    << "set xlabel 'cores m'\n"
    << "set key outside right\n"
    << "series = \"" << cols << "\"\n"
    << "plot for [col in series] datafile using (column('m')):(column(col)) "
       "with linespoints title col\n"
    << "pause -1\n";
}

struct SweepOptions {
  ChipFlags chip;
  std::string range = kDefaultRange;
  std::string plot_script;
};

int cmd_sweep(const SweepOptions& o, const Streams& io) {
  const auto ms = parse_m_range(o.range);
  const auto rows = sweep(o.chip.spec(), ms);
  io.out << join(kEnsembleColumns) << "\n";
  for (const auto& r : rows) io.out << join(ensemble_cells(r)) << "\n";
  if (!o.plot_script.empty())
    write_plot_script(o.plot_script, "sweep.csv",
                      {"m", "core_freq", "compute_time", "power", "energy", "ensemble_perf",
                       "speedup", "perf_per_power"});
  return kOk;
}

int cmd_comm_sweep(const SweepOptions& o, const Streams& io) {
  const auto ms = parse_m_range(o.range);
  const ChipSpec spec = o.chip.spec();
  // Rows are independent; evaluate them concurrently and print in m order.
  std::vector<std::future<std::vector<std::string>>> rows;
  for (auto m : ms)
    rows.push_back(std::async(std::launch::async, [&spec, m] {
      auto cells = ensemble_cells(ensemble_metrics(spec, m));
      auto extra = comm_cells(comm::comm_metrics(spec, m));
      cells.insert(cells.end(), extra.begin(), extra.end());
      return cells;
    }));
  auto header = kEnsembleColumns;
  header.insert(header.end(), kCommColumns.begin(), kCommColumns.end());
  io.out << join(header) << "\n";
  for (auto& f : rows) io.out << join(f.get()) << "\n";
  if (!o.plot_script.empty())
    write_plot_script(o.plot_script, "comm.csv",
                      {"compute_power", "sched_power", "mem_power", "total_power",
                       "perf_per_total_power"});
  return kOk;
}

// ------------------------------------------------------------------- et2

struct Et2Options {
  double energy = 1e6;
  double time = 1e-3;
  std::vector<std::string> transforms;
};

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("malformed number '" + text + "' in " + what);
}

void print_state(std::ostream& out, const char* key, const et2::State& s) {
  out << key << ": {energy: " << format_number(s.energy) << ", time: " << format_number(s.time)
      << ", theta: " << format_number(s.theta) << ", power: " << format_number(s.power()) << "}\n";
}

int cmd_et2(const Et2Options& o, const Streams& io) {
  // Buffered so a bad transform late in the chain leaves stdout empty.
  std::ostringstream out;
  et2::State state = et2::make_state(o.energy, o.time);
  print_state(out, "initial", state);
  out << "steps:\n";
  auto sink = [&io](std::string_view msg) { warn(io, std::string(msg)); };

  for (const auto& t : o.transforms) {
    const auto colon = t.find(':');
    if (colon == std::string::npos)
      throw UsageError("transform '" + t + "' must look like name:value");
    const std::string name = t.substr(0, colon);
    const std::string arg = t.substr(colon + 1);
    out << "  - transform: \"" << t << "\"\n";

    if (name == "stretch") {
      state = et2::stretch_time(state, parse_real(arg, t), sink);
    } else if (name == "shrink") {
      state = et2::shrink_work(state, parse_real(arg, t));
    } else if (name == "iso-time") {
      state = et2::iso_time_energy(state, parse_real(arg, t));
    } else if (name == "iso-energy") {
      state = et2::iso_energy_time(state, parse_real(arg, t));
    } else if (name == "parallel") {
      const auto m = parse_m_range(arg);
      if (m.size() != 1) throw UsageError("parallel takes a single core count");
      const auto r = et2::parallelize(state, m.front());
      out << "  ";
      print_state(out, "  per_core", r.per_core);
      state = et2::State{r.ensemble_energy, r.ensemble_time,
                         r.ensemble_energy * r.ensemble_time * r.ensemble_time};
    } else if (name == "constrain") {
      const auto eq = arg.find('=');
      if (eq == std::string::npos) throw UsageError("constrain takes E0=v, T0=v or P0=v");
      const std::string which = arg.substr(0, eq);
      const double v = parse_real(arg.substr(eq + 1), t);
      if (which == "E0")
        state = et2::at_energy(state, v);
      else if (which == "T0")
        state = et2::at_time(state, v);
      else if (which == "P0")
        state = et2::at_power(state, v);
      else
        throw UsageError("unknown constraint '" + which + "' (expected E0, T0 or P0)");
    } else {
      throw UsageError("unknown transform '" + name +
                       "' (expected stretch, shrink, iso-time, iso-energy, parallel, constrain)");
    }
    out << "  ";
    print_state(out, "  state", state);
  }
  print_state(out, "final", state);
  io.out << out.str();
  return kOk;
}

// -------------------------------------------------------------- simulate

struct SimOptions {
  std::string graph;
  ChipFlags chip;
  std::string range = "16";
  std::uint64_t stride = 5;
  std::uint32_t prealloc = 1;
  bool comm = false;
  std::uint64_t seed = 0;
  std::vector<std::string> outcomes;
  bool check_model = false;
  bool emit_events = false;
  std::string format = "yaml";
};

void report_crew(const TaskGraph& g, const Streams& io) {
  for (const auto& v : check_crew(g))
    warn(io, std::string("CREW ") + to_string(v.kind) + " conflict on '" + v.variable +
                 "' between concurrent tasks '" + v.task_a + "' and '" + v.task_b + "'");
}

int cmd_simulate(const SimOptions& o, const Streams& io) {
  const TaskGraph g = load_graph(o.graph);
  const auto dag = validate_dag(g);
  if (!dag) {
    std::string path;
    for (const auto& id : dag.cycle) path += (path.empty() ? "" : " -> ") + id;
    throw GraphError("task graph has a cycle: " + path);
  }
  report_crew(g, io);

  sim::SimConfig base;
  base.chip = o.chip.spec();
  base.mem_access_stride = o.stride;
  base.prealloc_depth = o.prealloc;
  base.comm_costs_enabled = o.comm;
  base.seed = o.seed;
  for (const auto& kv : o.outcomes) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
      throw UsageError("--outcome takes CONTROL=SUCCESSOR, got '" + kv + "'");
    base.conditional_outcomes[kv.substr(0, eq)] = kv.substr(eq + 1);
  }

  const auto ms = parse_m_range(o.range);
  std::vector<sim::SimConfig> configs;
  for (auto m : ms) {
    configs.push_back(base);
    configs.back().m = m;
  }
  std::vector<std::future<sim::TracedRun>> runs;
  for (const auto& cfg : configs)
    runs.push_back(std::async(std::launch::async, [&g, &cfg, &o] {
      if (o.emit_events) return sim::run_traced(g, cfg);
      return sim::TracedRun{sim::run(g, cfg), {}};
    }));

  std::ostringstream out;  // nothing is printed unless every run succeeds
  if (o.format == "csv") out << report_csv_header();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const sim::TracedRun r = runs[i].get();
    if (o.format == "csv") {
      out << report_csv_row(r.report);
      continue;
    }
    if (runs.size() > 1 || o.emit_events) out << "---\n";
    if (o.check_model) {
      const auto d = sim::compare_to_model(r.report, configs[i]);
      out << report_to_yaml(r.report, &d);
    } else {
      out << report_to_yaml(r.report);
    }
    if (o.emit_events) out << "---\n" << events_to_yaml(r.events);
  }
  io.out << out.str();
  return kOk;
}

int cmd_validate(const std::string& path, const Streams& io) {
  const TaskGraph g = load_graph(path);
  const auto dag = validate_dag(g);
  if (!dag) {
    std::string cyc;
    for (const auto& id : dag.cycle) cyc += (cyc.empty() ? "" : " -> ") + id;
    error(io, path + ": task graph has a cycle: " + cyc);
    return kInput;
  }
  const TaskGraph x = expand_duplicables(g);
  const auto violations = check_crew(g);
  report_crew(g, io);
  io.out << "ok: " << g.tasks().size() << " tasks, " << x.tasks().size() << " instances, "
         << g.edges().size() << " edges, " << g.total_work() << " instructions, "
         << violations.size() << " CREW violations\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, Streams io) {
  CLI::App app{"Many-core scaling model, energy-time calculus and plural-architecture simulator",
               "plural"};
  app.require_subcommand(1);

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "ideal ensemble metrics over a range of core counts");
  sweep_opts.chip.attach(sweep_cmd);
  sweep_cmd->add_option("--m", sweep_opts.range, "core counts: N | a,b,c | start:stop:xF | start:stop:+S")
      ->capture_default_str();
  sweep_cmd->add_option("--plot-script", sweep_opts.plot_script, "also write a gnuplot script");

  SweepOptions comm_opts;
  auto* comm_cmd = app.add_subcommand("comm-sweep", "power budget including communication costs");
  comm_opts.chip.attach(comm_cmd);
  comm_cmd->add_option("--m", comm_opts.range, "core counts")->capture_default_str();
  comm_cmd->add_option("--plot-script", comm_opts.plot_script, "also write a gnuplot script");

  Et2Options et2_opts;
  auto* et2_cmd = app.add_subcommand("et2", "apply energy-time transforms to an (E, t) point");
  et2_cmd->add_option("--e", et2_opts.energy, "energy")->capture_default_str();
  et2_cmd->add_option("--t", et2_opts.time, "time")->capture_default_str();
  et2_cmd->add_option("transform", et2_opts.transforms,
                      "stretch:a | shrink:b | iso-time:b | iso-energy:b | parallel:m | "
                      "constrain:E0=v|T0=v|P0=v (applied left to right)")
      ->required();

  SimOptions sim_opts;
  auto* sim_cmd = app.add_subcommand("simulate", "run a task graph on the plural architecture simulator");
  sim_cmd->add_option("graph", sim_opts.graph, "task graph file")->required();
  sim_opts.chip.attach(sim_cmd, false);
  sim_cmd->add_option("--m", sim_opts.range, "core count(s)")->capture_default_str();
  sim_cmd->add_option("--stride", sim_opts.stride, "instructions per shared-memory access")
      ->capture_default_str();
  sim_cmd->add_option("--prealloc", sim_opts.prealloc, "pre-allocation queue depth per core")
      ->capture_default_str();
  sim_cmd->add_flag("--comm", sim_opts.comm, "charge scheduler and memory message energy");
  sim_cmd->add_option("--seed", sim_opts.seed, "memory arbitration seed")->capture_default_str();
  sim_cmd->add_option("--outcome", sim_opts.outcomes, "CONTROL=SUCCESSOR for a conditional task");
  sim_cmd->add_flag("--check-model", sim_opts.check_model, "compare against the ideal closed form");
  sim_cmd->add_flag("--emit-events", sim_opts.emit_events, "dump the event log");
  sim_cmd->add_option("--format", sim_opts.format, "yaml or csv")
      ->check(CLI::IsMember({"yaml", "csv"}))
      ->capture_default_str();

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "check a task graph for cycles and CREW conflicts");
  validate_cmd->add_option("graph", validate_path, "task graph file")->required();

  std::vector<const char*> argv{"plural"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(sweep_opts, io);
    if (*comm_cmd) return cmd_comm_sweep(comm_opts, io);
    if (*et2_cmd) return cmd_et2(et2_opts, io);
    if (*sim_cmd) return cmd_simulate(sim_opts, io);
    if (*validate_cmd) return cmd_validate(validate_path, io);
  } catch (const UsageError& e) {
    error(io, e.what());
    return kUsage;
  } catch (const Error& e) {
    error(io, e.what());
    return kInput;
  } catch (const std::exception& e) {
    error(io, std::string("internal: ") + e.what());
    return kInternal;
  }
  return kUsage;
}

}  // namespace plural::cli
