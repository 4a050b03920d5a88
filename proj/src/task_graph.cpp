#include "plural/task_graph.hpp"

#include <algorithm>
#include <unordered_map>

#include "plural/errors.hpp"

namespace plural {

bool Task::is_conditional() const {
  const auto* c = std::get_if<Control>(&kind);
  return c && c->control == ControlKind::Conditional;
}

Task Task::singular(std::string id, std::string entry, std::uint64_t instructions,
                    std::set<std::string> reads, std::set<std::string> writes) {
  Task t;
  t.id = std::move(id);
  t.entry_point = std::move(entry);
  t.instruction_count = instructions;
  t.read_set = std::move(reads);
  t.write_set = std::move(writes);
  return t;
}

Task Task::duplicable(std::string id, std::uint32_t d, std::string entry,
                      std::uint64_t instructions, std::set<std::string> reads,
                      std::set<std::string> writes) {
  Task t = singular(std::move(id), std::move(entry), instructions, std::move(reads),
                    std::move(writes));
  t.kind = Duplicable{d};
  return t;
}

Task Task::control(std::string id, ControlKind kind) {
  Task t;
  t.id = std::move(id);
  t.kind = Control{kind};
  return t;
}

const char* to_string(ControlKind kind) {
  switch (kind) {
    case ControlKind::Branch: return "branch";
    case ControlKind::Merge: return "merge";
    case ControlKind::Conditional: return "conditional";
  }
  return "?";
}

std::optional<ControlKind> control_kind_from_string(const std::string& s) {
  if (s == "branch") return ControlKind::Branch;
  if (s == "merge") return ControlKind::Merge;
  if (s == "conditional") return ControlKind::Conditional;
  return std::nullopt;
}

const char* to_string(CrewKind kind) {
  return kind == CrewKind::WriteWrite ? "write-write" : "read-write";
}

std::string instance_id(const std::string& id, std::uint32_t k) {
  return id + "#" + std::to_string(k);
}

void TaskGraph::add_task(Task task) {
  if (task.id.empty()) throw GraphError("task id must not be empty");
  if (task.is_control()) {
    if (task.instruction_count != 0)
      throw GraphError("control task '" + task.id + "' cannot carry instructions");
    if (!task.read_set.empty() || !task.write_set.empty())
      throw GraphError("control task '" + task.id + "' cannot access shared variables");
    if (!task.entry_point.empty())
      throw GraphError("control task '" + task.id + "' has no code entry point");
  }
  if (const auto* dup = std::get_if<Duplicable>(&task.kind); dup && dup->instances < 1)
    throw GraphError("duplicable task '" + task.id + "' needs at least one instance");
  auto id = task.id;
  if (!tasks_.emplace(id, std::move(task)).second)
    throw GraphError("duplicate task id '" + id + "'");
}

void TaskGraph::add_edge(std::string pred, std::string succ) {
  edges_.emplace(std::move(pred), std::move(succ));
}

const Task* TaskGraph::find(const std::string& id) const {
  auto it = tasks_.find(id);
  return it == tasks_.end() ? nullptr : &it->second;
}

std::vector<std::string> TaskGraph::successors(const std::string& id) const {
  std::vector<std::string> out;
  for (auto it = edges_.lower_bound({id, std::string{}}); it != edges_.end() && it->first == id;
       ++it)
    out.push_back(it->second);
  return out;
}

std::vector<std::string> TaskGraph::predecessors(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& [p, s] : edges_)
    if (s == id) out.push_back(p);
  return out;
}

std::uint64_t TaskGraph::total_work() const {
  std::uint64_t total = 0;
  for (const auto& [id, t] : tasks_) {
    std::uint64_t copies = 1;
    if (const auto* dup = std::get_if<Duplicable>(&t.kind)) copies = dup->instances;
    total += copies * t.instruction_count;
  }
  return total;
}

DagCheck validate_dag(const TaskGraph& g) {
  for (const auto& [p, s] : g.edges()) {
    if (!g.find(p)) throw GraphError("edge " + p + " -> " + s + " names unknown task '" + p + "'");
    if (!g.find(s)) throw GraphError("edge " + p + " -> " + s + " names unknown task '" + s + "'");
  }

  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> mark;
  for (const auto& [id, t] : g.tasks()) mark[id] = Mark::White;

  // Iterative DFS; the explicit stack is the current path.
  struct Frame {
    std::string id;
    std::vector<std::string> succ;
    std::size_t next = 0;
  };
  for (const auto& [root, t] : g.tasks()) {
    if (mark[root] != Mark::White) continue;
    std::vector<Frame> stack;
    stack.push_back({root, g.successors(root)});
    mark[root] = Mark::Grey;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == f.succ.size()) {
        mark[f.id] = Mark::Black;
        stack.pop_back();
        continue;
      }
      std::string s = f.succ[f.next++];
      if (mark[s] == Mark::Grey) {
        DagCheck bad{false, {}};
        auto start = std::find_if(stack.begin(), stack.end(),
                                  [&](const Frame& fr) { return fr.id == s; });
        for (auto it = start; it != stack.end(); ++it) bad.cycle.push_back(it->id);
        bad.cycle.push_back(s);
        return bad;
      }
      if (mark[s] == Mark::White) {
        mark[s] = Mark::Grey;
        auto succ = g.successors(s);
        stack.push_back({std::move(s), std::move(succ)});
      }
    }
  }
  return {};
}

namespace {

std::string substitute_instance(const std::string& name, std::uint32_t k) {
  std::string out;
  const std::string num = std::to_string(k);
  for (char c : name) {
    if (c == kInstancePlaceholder)
      out += num;
    else
      out += c;
  }
  return out;
}

std::set<std::string> substitute_all(const std::set<std::string>& names, std::uint32_t k) {
  std::set<std::string> out;
  for (const auto& n : names) out.insert(substitute_instance(n, k));
  return out;
}

void require_dag(const TaskGraph& g) {
  auto check = validate_dag(g);
  if (!check) {
    std::string path;
    for (const auto& id : check.cycle) path += (path.empty() ? "" : " -> ") + id;
    throw GraphError("task graph has a cycle: " + path);
  }
}

// Dense reachability over a DAG: reach[i] has bit j set when a path i -> j
// exists.
class Reachability {
 public:
  explicit Reachability(const TaskGraph& g) {
    for (const auto& [id, t] : g.tasks()) {
      index_.emplace(id, ids_.size());
      ids_.push_back(id);
    }
    const std::size_t n = ids_.size();
    words_ = (n + 63) / 64;
    bits_.assign(n * words_, 0);

    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& [p, s] : g.edges()) {
      succ[index_.at(p)].push_back(index_.at(s));
      ++indeg[index_.at(s)];
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] == 0) order.push_back(i);
    for (std::size_t h = 0; h < order.size(); ++h)
      for (auto s : succ[order[h]])
        if (--indeg[s] == 0) order.push_back(s);

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t v = *it;
      for (auto s : succ[v]) {
        set(v, s);
        for (std::size_t w = 0; w < words_; ++w) bits_[v * words_ + w] |= bits_[s * words_ + w];
      }
    }
  }

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  bool reaches(std::size_t a, std::size_t b) const {
    return (bits_[a * words_ + b / 64] >> (b % 64)) & 1u;
  }

 private:
  void set(std::size_t a, std::size_t b) { bits_[a * words_ + b / 64] |= 1ull << (b % 64); }

  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

TaskGraph expand_duplicables(const TaskGraph& g) {
  std::map<std::string, std::vector<std::string>> replaced;
  TaskGraph out;
  for (const auto& [id, t] : g.tasks()) {
    const auto* dup = std::get_if<Duplicable>(&t.kind);
    if (!dup) {
      out.add_task(t);
      replaced[id] = {id};
      continue;
    }
    auto& names = replaced[id];
    for (std::uint32_t k = 0; k < dup->instances; ++k) {
      Task inst = t;
      inst.id = instance_id(id, k);
      inst.kind = Singular{};
      inst.instance = k;
      inst.origin = id;
      inst.read_set = substitute_all(t.read_set, k);
      inst.write_set = substitute_all(t.write_set, k);
      names.push_back(inst.id);
      out.add_task(std::move(inst));
    }
  }
  for (const auto& [p, s] : g.edges()) {
    auto pi = replaced.find(p);
    auto si = replaced.find(s);
    const std::vector<std::string> pn = pi == replaced.end() ? std::vector{p} : pi->second;
    const std::vector<std::string> sn = si == replaced.end() ? std::vector{s} : si->second;
    for (const auto& a : pn)
      for (const auto& b : sn) out.add_edge(a, b);
  }
  return out;
}

std::set<std::pair<std::string, std::string>> concurrent_pairs(const TaskGraph& g) {
  require_dag(g);
  const TaskGraph x = expand_duplicables(g);
  const Reachability reach(x);
  std::set<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < reach.size(); ++i)
    for (std::size_t j = i + 1; j < reach.size(); ++j)
      if (!reach.reaches(i, j) && !reach.reaches(j, i))
        pairs.emplace(reach.id(i), reach.id(j));
  return pairs;
}

std::vector<CrewViolation> check_crew(const TaskGraph& g) {
  require_dag(g);
  const TaskGraph x = expand_duplicables(g);
  std::vector<CrewViolation> out;
  for (const auto& [a, b] : concurrent_pairs(x)) {
    const Task& ta = *x.find(a);
    const Task& tb = *x.find(b);
    std::set<std::string> vars;
    for (const auto& v : ta.write_set) vars.insert(v);
    for (const auto& v : tb.write_set) vars.insert(v);
    for (const auto& v : vars) {
      const bool wa = ta.write_set.contains(v);
      const bool wb = tb.write_set.contains(v);
      if (wa && wb) {
        out.push_back({a, b, v, CrewKind::WriteWrite});
      } else if ((wa && tb.read_set.contains(v)) || (wb && ta.read_set.contains(v))) {
        out.push_back({a, b, v, CrewKind::ReadWrite});
      }
    }
  }
  return out;
}

}  // namespace plural
