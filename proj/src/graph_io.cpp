#include "plural/graph_io.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "plural/errors.hpp"

namespace plural {
namespace {

int line_of(const YAML::Node& n) {
  const auto mark = n.Mark();
  return mark.is_null() ? 0 : mark.line + 1;
}

[[noreturn]] void fail(const YAML::Node& n, const std::string& what) {
  throw ParseError(line_of(n), what);
}

std::string scalar(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) fail(n, "'" + key + "' must be a scalar");
  return n.Scalar();
}

std::uint64_t unsigned_value(const YAML::Node& n, const std::string& key) {
  const std::string s = scalar(n, key);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail(n, "'" + key + "' must be a nonnegative integer, got '" + s + "'");
  return v;
}

std::set<std::string> name_set(const YAML::Node& n, const std::string& key) {
  if (!n.IsSequence()) fail(n, "'" + key + "' must be a list of variable names");
  std::set<std::string> out;
  for (const auto& item : n) {
    auto name = scalar(item, key);
    if (name.empty()) fail(item, "empty variable name in '" + key + "'");
    out.insert(std::move(name));
  }
  return out;
}

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

Task parse_task(const YAML::Node& n) {
  if (!n.IsMap()) fail(n, "each task must be a mapping");
  static const std::set<std::string> known = {"id",     "kind",         "d",     "control_kind",
                                              "entry",  "instructions", "reads", "writes"};
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!known.contains(key)) fail(kv.first, "unknown task key '" + key + "'");
  }
  if (!n["id"]) fail(n, "task is missing 'id'");
  const std::string id = scalar(n["id"], "id");
  if (!valid_id(id))
    fail(n["id"], "task id '" + id + "' may only use letters, digits, '_', '-' and '.'");
  if (!n["kind"]) fail(n, "task '" + id + "' is missing 'kind'");
  const std::string kind = scalar(n["kind"], "kind");

  auto forbid = [&](const char* key, const std::string& why) {
    if (n[key]) fail(n[key], "task '" + id + "': '" + key + "' " + why);
  };

  if (kind == "control") {
    forbid("d", "only applies to duplicable tasks");
    forbid("entry", "is not allowed, control tasks have no code");
    forbid("reads", "is not allowed, control tasks access no memory");
    forbid("writes", "is not allowed, control tasks access no memory");
    if (n["instructions"] && unsigned_value(n["instructions"], "instructions") != 0)
      fail(n["instructions"], "task '" + id + "': control tasks execute no instructions");
    if (!n["control_kind"]) fail(n, "control task '" + id + "' is missing 'control_kind'");
    const auto ck_text = scalar(n["control_kind"], "control_kind");
    const auto ck = control_kind_from_string(ck_text);
    if (!ck)
      fail(n["control_kind"], "unknown control_kind '" + ck_text +
                                  "' (expected branch, merge or conditional)");
    return Task::control(id, *ck);
  }

  if (kind != "singular" && kind != "duplicable")
    fail(n["kind"], "unknown task kind '" + kind + "' (expected singular, duplicable or control)");
  forbid("control_kind", "only applies to control tasks");
  if (!n["entry"]) fail(n, "task '" + id + "' is missing 'entry'");
  if (!n["instructions"]) fail(n, "task '" + id + "' is missing 'instructions'");

  Task t = Task::singular(id, scalar(n["entry"], "entry"),
                          unsigned_value(n["instructions"], "instructions"));
  if (n["reads"]) t.read_set = name_set(n["reads"], "reads");
  if (n["writes"]) t.write_set = name_set(n["writes"], "writes");

  if (kind == "duplicable") {
    if (!n["d"]) fail(n, "duplicable task '" + id + "' is missing 'd'");
    const auto d = unsigned_value(n["d"], "d");
    if (d < 1 || d > 0xffffffffull) fail(n["d"], "task '" + id + "': d must be in [1, 2^32)");
    t.kind = Duplicable{static_cast<std::uint32_t>(d)};
  } else {
    forbid("d", "only applies to duplicable tasks");
  }
  return t;
}

}  // namespace

TaskGraph parse_graph(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.mark.is_null() ? 0 : e.mark.line + 1, e.msg);
  }
  if (!root.IsMap()) throw ParseError(line_of(root), "task graph must be a mapping with 'tasks' and 'edges'");
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (key != "tasks" && key != "edges") fail(kv.first, "unknown top-level key '" + key + "'");
  }

  TaskGraph g;
  if (root["tasks"]) {
    const auto tasks = root["tasks"];
    if (!tasks.IsSequence() && !tasks.IsNull()) fail(tasks, "'tasks' must be a list");
    for (const auto& node : tasks) {
      try {
        g.add_task(parse_task(node));
      } catch (const GraphError& e) {
        fail(node, e.what());
      }
    }
  }
  if (root["edges"]) {
    const auto edges = root["edges"];
    if (!edges.IsSequence() && !edges.IsNull()) fail(edges, "'edges' must be a list");
    for (const auto& e : edges) {
      if (!e.IsSequence() || e.size() != 2) fail(e, "each edge must be a [pred, succ] pair");
      const auto p = scalar(e[0], "edge");
      const auto s = scalar(e[1], "edge");
      if (!g.find(p)) fail(e[0], "edge names unknown task '" + p + "'");
      if (!g.find(s)) fail(e[1], "edge names unknown task '" + s + "'");
      g.add_edge(p, s);
    }
  }
  return g;
}

TaskGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open file", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.message(), path.string());
  }
}

// Expanded instances are written as singular tasks under their instance ids;
// such documents are for inspection and do not parse back.
std::string dump_graph(const TaskGraph& g) {
  YAML::Emitter out;
  out << YAML::BeginMap << YAML::Key << "tasks" << YAML::Value << YAML::BeginSeq;
  for (const auto& [id, t] : g.tasks()) {
    out << YAML::BeginMap << YAML::Key << "id" << YAML::Value << id;
    if (const auto* c = std::get_if<Control>(&t.kind)) {
      out << YAML::Key << "kind" << YAML::Value << "control";
      out << YAML::Key << "control_kind" << YAML::Value << to_string(c->control);
    } else {
      if (const auto* d = std::get_if<Duplicable>(&t.kind)) {
        out << YAML::Key << "kind" << YAML::Value << "duplicable";
        out << YAML::Key << "d" << YAML::Value << d->instances;
      } else {
        out << YAML::Key << "kind" << YAML::Value << "singular";
      }
      out << YAML::Key << "entry" << YAML::Value << t.entry_point;
      out << YAML::Key << "instructions" << YAML::Value << t.instruction_count;
      if (!t.read_set.empty()) {
        out << YAML::Key << "reads" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (const auto& v : t.read_set) out << v;
        out << YAML::EndSeq;
      }
      if (!t.write_set.empty()) {
        out << YAML::Key << "writes" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (const auto& v : t.write_set) out << v;
        out << YAML::EndSeq;
      }
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "edges" << YAML::Value << YAML::BeginSeq;
  for (const auto& [p, s] : g.edges())
    out << YAML::Flow << YAML::BeginSeq << p << s << YAML::EndSeq;
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace plural
