#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "plural/task_graph.hpp"

namespace plural {

// Task-graph documents are YAML (JSON is accepted as a YAML subset):
//
//   tasks:
//     - id: init                  # letters, digits, '_', '-', '.'
//       kind: singular            # singular | duplicable | control
//       entry: init_main          # required for singular / duplicable
//       instructions: 1000        # required for singular / duplicable
//       reads: [cfg]              # optional
//       writes: [buf]             # optional
//     - id: body
//       kind: duplicable
//       d: 64                     # instance count, duplicable only
//       entry: body_main
//       instructions: 1000
//       writes: ["out[#]"]        # '#' becomes the instance number
//     - id: pick
//       kind: control
//       control_kind: conditional # branch | merge | conditional
//   edges:
//     - [init, body]
//
// Unknown keys are rejected. Errors are ParseError carrying the 1-based line.

TaskGraph parse_graph(std::string_view text);
TaskGraph load_graph(const std::filesystem::path& path);
std::string dump_graph(const TaskGraph& g);

}  // namespace plural
