#include "m_range.hpp"

#include <charconv>
#include <string>

#include "plural/errors.hpp"

namespace plural::cli {
namespace {

std::uint64_t parse_count(std::string_view text, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw UsageError("malformed core-count range '" + std::string(whole) + "'");
  return v;
}

}  // namespace

std::vector<std::uint64_t> parse_m_range(std::string_view spec) {
  std::vector<std::uint64_t> out;
  const std::string whole(spec);

  if (spec.find(':') != std::string_view::npos) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string_view::npos || spec.find(':', c2 + 1) != std::string_view::npos)
      throw UsageError("range '" + whole + "' must look like start:stop:xFACTOR or start:stop:+STEP");
    const auto start = parse_count(spec.substr(0, c1), spec);
    const auto stop = parse_count(spec.substr(c1 + 1, c2 - c1 - 1), spec);
    const auto step_text = spec.substr(c2 + 1);
    if (step_text.size() < 2 || (step_text[0] != 'x' && step_text[0] != '+'))
      throw UsageError("range '" + whole + "' step must be xFACTOR or +STEP");
    const auto step = parse_count(step_text.substr(1), spec);
    const bool geometric = step_text[0] == 'x';
    if (start < 1) throw UsageError("core counts start at 1");
    if (stop < start) throw UsageError("range '" + whole + "' stops before it starts");
    if (geometric ? step < 2 : step < 1)
      throw UsageError("range '" + whole + "' step would not advance");
    for (std::uint64_t m = start; m <= stop;) {
      out.push_back(m);
      const std::uint64_t next = geometric ? m * step : m + step;
      if (next <= m) break;  // overflow
      m = next;
    }
    return out;
  }

  std::size_t pos = 0;
  while (true) {
    const auto comma = spec.find(',', pos);
    const auto item = spec.substr(pos, comma == std::string_view::npos ? spec.npos : comma - pos);
    const auto m = parse_count(item, spec);
    if (m < 1) throw UsageError("core counts start at 1");
    if (!out.empty() && m <= out.back())
      throw UsageError("core counts in '" + whole + "' must be strictly increasing");
    out.push_back(m);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace plural::cli
