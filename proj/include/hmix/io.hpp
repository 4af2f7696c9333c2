// Shared output helpers: shortest round-trip number formatting, CSV rows and
// the metadata block written ahead of every dataset.
#pragma once

#include <charconv>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hmix::io {

/// Shortest representation that parses back to the same double.
inline std::string fmt_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view s);
long long parse_int(std::string_view s);

/// Split on commas, no quoting (all our CSVs are numeric).
std::vector<std::string> split_csv_line(std::string_view line);

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// "# key: value" lines.
void write_metadata_comment(std::ostream& os, const Metadata& meta);

}  // namespace hmix::io
