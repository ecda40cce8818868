#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace discordlab::cli {

/// Shortest round-trip decimal, or `digits` significant digits when
/// positive. Locale independent; NaN prints as "nan".
std::string format_double(double value, int digits = 0);

/// value rounded to `digits` significant digits.
double round_significant(double value, int digits);

struct Provenance {
  std::string version;
  std::string command;
  std::uint64_t seed = 0;
};

/// '#'-prefixed header lines.
void write_csv_header(std::ostream& out, const Provenance& provenance,
                      const std::vector<std::string>& extra = {});

/// Comma-joined row terminated by a single '\n'.
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace discordlab::cli
