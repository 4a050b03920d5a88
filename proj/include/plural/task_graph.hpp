#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace plural {

// Task kinds of the plural programming model. Tasks carry no arguments,
// inputs or outputs; they communicate only through shared variables.
struct Singular {
  friend bool operator==(const Singular&, const Singular&) = default;
};
struct Duplicable {
  std::uint32_t instances = 1;  // d
  friend bool operator==(const Duplicable&, const Duplicable&) = default;
};
enum class ControlKind { Branch, Merge, Conditional };
struct Control {
  ControlKind control = ControlKind::Branch;
  friend bool operator==(const Control&, const Control&) = default;
};
using TaskKind = std::variant<Singular, Duplicable, Control>;

// Placeholder a duplicable task may put in a variable name ("v[#]"); each
// instance substitutes its own instance number for it.
inline constexpr char kInstancePlaceholder = '#';

struct Task {
  std::string id;
  TaskKind kind = Singular{};
  std::string entry_point;  // empty for control tasks
  std::uint64_t instruction_count = 0;
  std::set<std::string> read_set;
  std::set<std::string> write_set;

  // Set on the instances produced by expand_duplicables.
  std::optional<std::uint32_t> instance;
  std::string origin;  // id of the duplicable task an instance came from

  bool is_control() const { return std::holds_alternative<Control>(kind); }
  bool is_duplicable() const { return std::holds_alternative<Duplicable>(kind); }
  bool is_conditional() const;

  static Task singular(std::string id, std::string entry, std::uint64_t instructions,
                       std::set<std::string> reads = {}, std::set<std::string> writes = {});
  static Task duplicable(std::string id, std::uint32_t d, std::string entry,
                         std::uint64_t instructions, std::set<std::string> reads = {},
                         std::set<std::string> writes = {});
  static Task control(std::string id, ControlKind kind);

  friend bool operator==(const Task&, const Task&) = default;
};

const char* to_string(ControlKind kind);
std::optional<ControlKind> control_kind_from_string(const std::string& s);

// Id of instance k of duplicable task id: "id#k".
std::string instance_id(const std::string& id, std::uint32_t k);

// Tasks plus precedence edges. Edge endpoints are not checked on insertion;
// validate_dag reports dangling ones.
class TaskGraph {
 public:
  using Edge = std::pair<std::string, std::string>;

  // Throws GraphError on a duplicate id or a task violating its kind's
  // invariants (control tasks with work or variables, d == 0).
  void add_task(Task task);
  void add_edge(std::string pred, std::string succ);

  const std::map<std::string, Task>& tasks() const { return tasks_; }
  const std::set<Edge>& edges() const { return edges_; }
  const Task* find(const std::string& id) const;
  bool empty() const { return tasks_.empty(); }

  std::vector<std::string> successors(const std::string& id) const;
  std::vector<std::string> predecessors(const std::string& id) const;

  // Instructions summed over every instance (duplicables count d times).
  std::uint64_t total_work() const;

  friend bool operator==(const TaskGraph&, const TaskGraph&) = default;

 private:
  std::map<std::string, Task> tasks_;
  std::set<Edge> edges_;
};

struct DagCheck {
  bool ok = true;
  std::vector<std::string> cycle;  // witness, first id repeated at the end

  explicit operator bool() const { return ok; }
};

// Throws GraphError naming the missing id when an edge endpoint is unknown.
DagCheck validate_dag(const TaskGraph& g);

// Replaces each duplicable task by d singular instances "id#0".."id#(d-1)"
// that share its entry point and work, with the instance placeholder in
// variable names substituted. Every instance inherits all of the original's
// edges, so successors wait for the full set.
TaskGraph expand_duplicables(const TaskGraph& g);

// Unordered pairs {x, y} (x < y) of tasks of the expanded graph with no
// precedence path in either direction. Throws GraphError if g is cyclic.
std::set<std::pair<std::string, std::string>> concurrent_pairs(const TaskGraph& g);

enum class CrewKind { WriteWrite, ReadWrite };
const char* to_string(CrewKind kind);

struct CrewViolation {
  std::string task_a;
  std::string task_b;
  std::string variable;
  CrewKind kind = CrewKind::WriteWrite;

  friend bool operator==(const CrewViolation&, const CrewViolation&) = default;
};

// Concurrent-read exclusive-write check over the expanded graph: a variable
// written by a task may not be touched by any task concurrent with it.
// Sorted by (task_a, task_b, variable). Throws GraphError if g is cyclic.
std::vector<CrewViolation> check_crew(const TaskGraph& g);

}  // namespace plural
