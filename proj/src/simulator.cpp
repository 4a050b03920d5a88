#include "plural/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "plural/comm.hpp"
#include "plural/errors.hpp"
#include "plural/scaling.hpp"

namespace plural::sim {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Ready: return "ready";
    case EventKind::Dispatch: return "dispatch";
    case EventKind::Preallocate: return "preallocate";
    case EventKind::Start: return "start";
    case EventKind::Access: return "access";
    case EventKind::Complete: return "complete";
    case EventKind::Control: return "control";
    case EventKind::Skip: return "skip";
  }
  return "?";
}

void SimConfig::validate() const {
  chip.validate();
  if (m < 1) throw ValidationError("m", "core count must be >= 1");
  if (mem_access_stride < 1) throw ValidationError("mem_access_stride", "must be >= 1");
}

namespace {

constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

struct Node {
  const Task* task = nullptr;
  std::string group;  // id of the original task (the duplicable for instances)
  std::vector<std::size_t> succ;
  std::size_t indegree = 0;
  std::vector<std::string> vars;  // access rotation: reads, then writes
};

// Expanded graph in dispatch order: original id, then instance number.
class Program {
 public:
  Program(const TaskGraph& g, const SimConfig& cfg) : expanded_(expand_duplicables(g)) {
    auto check = validate_dag(g);
    if (!check) {
      std::string path;
      for (const auto& id : check.cycle) path += (path.empty() ? "" : " -> ") + id;
      throw GraphError("task graph has a cycle: " + path);
    }
    if (expanded_.total_work() == 0)
      throw DegenerateInputError("task graph has no instructions to execute");

    for (const auto& [ctrl, choice] : cfg.conditional_outcomes) {
      const Task* t = g.find(ctrl);
      if (!t) throw ConfigError("conditional outcome names unknown task '" + ctrl + "'");
      if (!t->is_conditional())
        throw ConfigError("task '" + ctrl + "' is not a conditional control task");
      const auto succ = g.successors(ctrl);
      if (std::find(succ.begin(), succ.end(), choice) == succ.end())
        throw ConfigError("outcome '" + choice + "' is not a successor of '" + ctrl + "'");
    }

    for (const auto& [id, t] : expanded_.tasks()) {
      Node n;
      n.task = &t;
      n.group = t.instance ? t.origin : id;
      n.vars.assign(t.read_set.begin(), t.read_set.end());
      n.vars.insert(n.vars.end(), t.write_set.begin(), t.write_set.end());
      nodes_.push_back(std::move(n));
    }
    std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) {
      if (a.group != b.group) return a.group < b.group;
      return a.task->instance.value_or(0) < b.task->instance.value_or(0);
    });
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes_.size(); ++i) index.emplace(nodes_[i].task->id, i);
    for (const auto& [p, s] : expanded_.edges()) {
      nodes_[index.at(p)].succ.push_back(index.at(s));
      ++nodes_[index.at(s)].indegree;
    }
    for (auto& n : nodes_) std::sort(n.succ.begin(), n.succ.end());
  }

  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  TaskGraph expanded_;
  std::vector<Node> nodes_;
};

struct Running {
  std::size_t task = 0;
  std::uint64_t start = 0;
  std::uint64_t next_instr = 0;  // index of the next instruction to issue
  std::uint64_t clock = 0;       // slot in which next_instr issues
  std::uint64_t accesses = 0;    // shared-memory accesses issued so far
};

struct Core {
  std::optional<Running> run;
  std::deque<std::size_t> queue;
  std::uint64_t busy_slots = 0;
};

struct Totals {
  std::uint64_t makespan_slots = 0;
  std::uint64_t instructions = 0;
  std::uint64_t executed = 0;
  std::uint64_t skipped = 0;
  std::uint64_t sched_msgs = 0;
  std::uint64_t mem_accesses = 0;
  std::uint64_t stalls = 0;
  std::vector<std::uint64_t> busy_slots;
};

class Engine {
 public:
  Engine(const Program& prog, const SimConfig& cfg, std::vector<SimEvent>* log)
      : prog_(prog), cfg_(cfg), log_(log), cores_(cfg.m), rng_(cfg.seed) {
    const auto& nodes = prog_.nodes();
    resolved_in_.assign(nodes.size(), 0);
    live_in_.assign(nodes.size(), 0);
  }

  Totals execute() {
    const auto& nodes = prog_.nodes();
    std::vector<std::size_t> batch;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].indegree == 0) settle(i, 0, batch);
    enqueue(batch);
    dispatch(0);

    while (true) {
      std::uint64_t now = kNever;
      for (const auto& c : cores_)
        if (c.run) now = std::min(now, next_event(*c.run));
      if (now == kNever) break;

      // Completions free cores first, then the scheduler reacts, then the
      // memory network arbitrates whatever accesses fall into this slot.
      batch.clear();
      for (std::size_t ci = 0; ci < cores_.size(); ++ci) {
        Core& c = cores_[ci];
        if (!c.run || next_event(*c.run) != now || !finished(*c.run)) continue;
        complete(ci, now, batch);
      }
      enqueue(batch);
      dispatch(now);
      arbitrate(now);
    }

    if (settled_ != nodes.size())
      throw std::logic_error("simulation stalled with unsettled tasks");
    totals_.busy_slots.reserve(cores_.size());
    for (const auto& c : cores_) totals_.busy_slots.push_back(c.busy_slots);
    return totals_;
  }

 private:
  void log(std::uint64_t slot, EventKind kind, std::size_t task, int core = -1,
           std::string var = {}, std::uint64_t stall = 0) {
    if (!log_) return;
    log_->push_back({slot, kind, prog_.nodes()[task].task->id, core, std::move(var), stall});
  }

  std::uint64_t instructions(std::size_t task) const {
    return prog_.nodes()[task].task->instruction_count;
  }

  bool finished(const Running& r) const { return next_access(r) == kNever; }

  // Instruction index of the next shared-memory access, or kNever when the
  // task runs to completion without one.
  std::uint64_t next_access(const Running& r) const {
    const auto& node = prog_.nodes()[r.task];
    const std::uint64_t n = instructions(r.task);
    if (node.vars.empty() || r.next_instr >= n) return kNever;
    const std::uint64_t stride = cfg_.mem_access_stride;
    const std::uint64_t k = r.next_instr + (stride - 1 - r.next_instr % stride);
    return k < n ? k : kNever;
  }

  std::uint64_t next_event(const Running& r) const {
    const std::uint64_t k = next_access(r);
    const std::uint64_t target = k == kNever ? instructions(r.task) : k;
    return r.clock + (target - r.next_instr);
  }

  // Marks an edge into task resolved; once all are, the task is either ready
  // (no predecessors, or at least one live edge) or skipped.
  void resolve_edge(std::size_t task, bool live, std::uint64_t now,
                    std::vector<std::size_t>& batch) {
    ++resolved_in_[task];
    if (live) ++live_in_[task];
    if (resolved_in_[task] == prog_.nodes()[task].indegree) settle(task, now, batch);
  }

  void settle(std::size_t task, std::uint64_t now, std::vector<std::size_t>& batch) {
    const Node& node = prog_.nodes()[task];
    const bool live = node.indegree == 0 || live_in_[task] > 0;
    if (!live) {
      ++settled_;
      ++totals_.skipped;
      log(now, EventKind::Skip, task);
      for (auto s : node.succ) resolve_edge(s, false, now, batch);
      return;
    }
    if (node.task->is_control()) {
      ++settled_;
      log(now, EventKind::Control, task);
      release_successors(task, now, batch);
      return;
    }
    log(now, EventKind::Ready, task);
    batch.push_back(task);
  }

  void release_successors(std::size_t task, std::uint64_t now, std::vector<std::size_t>& batch) {
    const Node& node = prog_.nodes()[task];
    if (!node.task->is_conditional()) {
      for (auto s : node.succ) resolve_edge(s, true, now, batch);
      return;
    }
    auto it = cfg_.conditional_outcomes.find(node.task->id);
    if (it == cfg_.conditional_outcomes.end())
      throw ConfigError("conditional task '" + node.task->id + "' was reached but no outcome was supplied");
    for (auto s : node.succ) resolve_edge(s, prog_.nodes()[s].group == it->second, now, batch);
  }

  void enqueue(std::vector<std::size_t>& batch) {
    std::sort(batch.begin(), batch.end());
    ready_.insert(ready_.end(), batch.begin(), batch.end());
    batch.clear();
  }

  void start(std::size_t ci, std::size_t task, std::uint64_t now) {
    cores_[ci].run = Running{task, now, 0, now, 0};
    log(now, EventKind::Start, task, static_cast<int>(ci));
  }

  void dispatch(std::uint64_t now) {
    while (!ready_.empty()) {
      const std::size_t task = ready_.front();
      std::optional<std::size_t> idle;
      for (std::size_t ci = 0; ci < cores_.size() && !idle; ++ci)
        if (!cores_[ci].run) idle = ci;
      if (idle) {
        ready_.pop_front();
        ++totals_.sched_msgs;
        log(now, EventKind::Dispatch, task, static_cast<int>(*idle));
        start(*idle, task, now);
        continue;
      }
      std::optional<std::size_t> slot;
      for (std::size_t ci = 0; ci < cores_.size(); ++ci) {
        if (cores_[ci].queue.size() >= cfg_.prealloc_depth) continue;
        if (!slot || cores_[ci].queue.size() < cores_[*slot].queue.size()) slot = ci;
      }
      if (!slot) return;
      ready_.pop_front();
      ++totals_.sched_msgs;
      cores_[*slot].queue.push_back(task);
      log(now, EventKind::Preallocate, task, static_cast<int>(*slot));
    }
  }

  void complete(std::size_t ci, std::uint64_t now, std::vector<std::size_t>& batch) {
    Core& c = cores_[ci];
    const Running r = *c.run;
    c.run.reset();
    c.busy_slots += now - r.start;
    totals_.instructions += instructions(r.task);
    ++totals_.executed;
    ++totals_.sched_msgs;  // completion message
    totals_.makespan_slots = std::max(totals_.makespan_slots, now);
    ++settled_;
    log(now, EventKind::Complete, r.task, static_cast<int>(ci));

    if (!c.queue.empty()) {
      const std::size_t next = c.queue.front();
      c.queue.pop_front();
      start(ci, next, now);
    }
    release_successors(r.task, now, batch);
  }

  void arbitrate(std::uint64_t now) {
    // variable -> cores requesting it in this slot, by ascending core index
    std::map<std::string, std::vector<std::size_t>> requests;
    for (std::size_t ci = 0; ci < cores_.size(); ++ci) {
      const Core& c = cores_[ci];
      if (!c.run || finished(*c.run) || next_event(*c.run) != now) continue;
      const auto& vars = prog_.nodes()[c.run->task].vars;
      requests[vars[c.run->accesses % vars.size()]].push_back(ci);
    }
    for (auto& [var, order] : requests) {
      // Fisher-Yates on raw engine output keeps the permutation identical
      // across standard libraries.
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng_() % i]);
      std::uint64_t& free_slot = next_free_[var];
      for (auto ci : order) {
        Running& r = *cores_[ci].run;
        const std::uint64_t granted = std::max(now, free_slot);
        free_slot = granted + 1;
        const std::uint64_t stall = granted - now;
        totals_.stalls += stall;
        ++totals_.mem_accesses;
        log(granted, EventKind::Access, r.task, static_cast<int>(ci), var, stall);
        r.next_instr = next_access(r) + 1;
        r.clock = granted + 1;
        ++r.accesses;
      }
    }
  }

  const Program& prog_;
  const SimConfig& cfg_;
  std::vector<SimEvent>* log_;
  std::vector<Core> cores_;
  std::mt19937_64 rng_;
  std::deque<std::size_t> ready_;
  std::vector<std::size_t> resolved_in_;
  std::vector<std::size_t> live_in_;
  std::map<std::string, std::uint64_t> next_free_;
  std::size_t settled_ = 0;
  Totals totals_;
};

SimReport measure(const Program& prog, const SimConfig& cfg, std::vector<SimEvent>* log) {
  const Totals t = Engine(prog, cfg, log).execute();
  const EnsembleMetrics model = ensemble_metrics(cfg.chip, cfg.m);

  SimReport r;
  r.m = cfg.m;
  r.area = cfg.chip.area;
  r.cpi = cfg.chip.cpi;
  r.pollack_exponent = cfg.chip.pollack_exponent;
  r.comm_costs_enabled = cfg.comm_costs_enabled;

  r.slot_time = cfg.chip.cpi / model.core_freq;
  r.makespan_slots = t.makespan_slots;
  r.makespan = static_cast<double>(t.makespan_slots) * r.slot_time;
  r.total_instructions = t.instructions;
  r.executed_instances = t.executed;
  r.skipped_instances = t.skipped;
  r.sched_msg_count = t.sched_msgs;
  r.mem_access_count = t.mem_accesses;
  r.mem_conflict_stalls = t.stalls;

  // One instruction on a core of area a lasts cpi/f and burns a*f power.
  r.compute_energy = static_cast<double>(t.instructions) * (model.core_area * cfg.chip.cpi);
  if (cfg.chip.static_power_enabled) r.static_energy = cfg.chip.area * r.makespan;
  if (cfg.comm_costs_enabled) {
    r.sched_msg_energy_total =
        static_cast<double>(t.sched_msgs) * comm::sched_msg_energy(cfg.chip.area);
    r.mem_msg_energy_total =
        static_cast<double>(t.mem_accesses) * comm::mem_access_energy(cfg.chip.area, cfg.m);
  }
  r.total_energy = r.compute_energy + r.static_energy + r.sched_msg_energy_total +
                   r.mem_msg_energy_total;
  r.avg_power = r.total_energy / r.makespan;

  for (auto busy : t.busy_slots) {
    r.per_core_busy_time.push_back(static_cast<double>(busy) * r.slot_time);
    r.utilization.push_back(static_cast<double>(busy) / static_cast<double>(t.makespan_slots));
  }
  return r;
}

}  // namespace

namespace {

SimReport run_with_reference(const TaskGraph& g, const SimConfig& cfg,
                             std::vector<SimEvent>* log) {
  cfg.validate();
  const Program prog(g, cfg);
  SimReport r = measure(prog, cfg, log);
  if (cfg.m == 1) {
    r.reference_makespan = r.makespan;
    r.reference_energy = r.total_energy;
    r.reference_avg_power = r.avg_power;
  } else {
    SimConfig single = cfg;
    single.m = 1;
    const SimReport ref = measure(prog, single, nullptr);
    r.reference_makespan = ref.makespan;
    r.reference_energy = ref.total_energy;
    r.reference_avg_power = ref.avg_power;
  }
  r.empirical_speedup = r.reference_makespan / r.makespan;
  return r;
}

}  // namespace

TracedRun run_traced(const TaskGraph& g, const SimConfig& cfg) {
  TracedRun out;
  out.report = run_with_reference(g, cfg, &out.events);
  return out;
}

SimReport run(const TaskGraph& g, const SimConfig& cfg) {
  return run_with_reference(g, cfg, nullptr);
}

ModelDeviation compare_to_model(const SimReport& report, const SimConfig& cfg) {
  cfg.validate();
  if (report.m != cfg.m || report.area != cfg.chip.area || report.cpi != cfg.chip.cpi ||
      report.pollack_exponent != cfg.chip.pollack_exponent ||
      report.comm_costs_enabled != cfg.comm_costs_enabled)
    throw UsageError("report was produced under a different configuration");

  const EnsembleMetrics model = ensemble_metrics(cfg.chip, cfg.m);
  auto deviation = [](double measured, double expected) {
    return std::abs(measured / expected - 1.0);
  };

  ModelDeviation d;
  d.speedup_measured = report.empirical_speedup;
  d.speedup_model = model.speedup;
  d.speedup_deviation = deviation(d.speedup_measured, d.speedup_model);
  d.energy_ratio_measured = report.total_energy / report.reference_energy;
  d.energy_ratio_model = 1.0 / model.energydown;
  d.energy_deviation = deviation(d.energy_ratio_measured, d.energy_ratio_model);
  d.power_ratio_measured = report.avg_power / report.reference_avg_power;
  d.power_ratio_model = 1.0 / model.powerdown;
  d.power_deviation = deviation(d.power_ratio_measured, d.power_ratio_model);
  return d;
}

}  // namespace plural::sim
