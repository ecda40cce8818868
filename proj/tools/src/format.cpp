#include "discordlab/cli/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace discordlab::cli {

std::string format_double(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto result = digits > 0 ? std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                                 std::chars_format::general, digits)
                                 : std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

double round_significant(double value, int digits) {
  if (!std::isfinite(value)) return value;
  const std::string text = format_double(value, digits);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

void write_csv_header(std::ostream& out, const Provenance& provenance,
                      const std::vector<std::string>& extra) {
  out << "# discordlab " << provenance.version << '\n';
  out << "# command: " << provenance.command << '\n';
  out << "# seed: " << provenance.seed << '\n';
  for (const auto& line : extra) out << "# " << line << '\n';
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace discordlab::cli
