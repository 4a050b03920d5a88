#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plural::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kInternal = 3 };

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color = false;  // ANSI color on diagnostics
};

// Entry point of the `plural` tool; args excludes the program name.
int run(const std::vector<std::string>& args, Streams io);

}  // namespace plural::cli
