#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace plural::cli {

// Core-count lists accepted by --m:
//   "16"            a single value
//   "1,4,16"        an explicit, strictly increasing list
//   "1:16384:x2"    geometric, start..stop inclusive, factor >= 2
//   "1:64:+1"       arithmetic, step >= 1
// Throws UsageError on anything else.
std::vector<std::uint64_t> parse_m_range(std::string_view spec);

}  // namespace plural::cli
