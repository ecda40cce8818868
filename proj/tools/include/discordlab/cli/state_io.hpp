#pragma once

// JSON state files. Exactly one of the following keys selects the source
// (an optional "comment" string is ignored):
//
//   {"matrix": [[[re, im], ...4], ...4]}      real entries may be bare numbers
//   {"xstate": {"a":, "b":, "c":, "d":, "u":, "v":, "mu":, "nu":}}
//   {"bell_diagonal": [t1, t2, t3]}
//   {"mixture": {"lambda":, "alpha":, "beta":}}

#include "discordlab/qstate.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace discordlab::cli {

/// Malformed state files (missing keys, wrong shapes, non-numeric values).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TwoQubitState parse_state(const nlohmann::json& doc);
TwoQubitState load_state(const std::filesystem::path& path);

/// {"matrix": ...} with every entry as [re, im]; reloading reproduces the
/// matrix bit for bit.
nlohmann::json state_to_json(const TwoQubitState& rho);
void save_state(const std::filesystem::path& path, const TwoQubitState& rho);

}  // namespace discordlab::cli
