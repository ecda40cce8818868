#include "discordlab/cli/state_io.hpp"

#include "discordlab/conjectures.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace discordlab::cli {
namespace {

using nlohmann::json;

double number(const json& value, const std::string& where) {
  if (!value.is_number()) throw SchemaError(where + " must be a number");
  return value.get<double>();
}

double field(const json& obj, const char* key, const std::string& where, bool required,
             double fallback = 0.0) {
  if (!obj.contains(key)) {
    if (required) throw SchemaError(where + " is missing \"" + key + "\"");
    return fallback;
  }
  return number(obj.at(key), where + "." + key);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw SchemaError(where + " has unknown key \"" + key + "\"");
  }
}

TwoQubitState parse_matrix(const json& rows) {
  if (!rows.is_array() || rows.size() != 4) throw SchemaError("matrix must be a 4x4 array");
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != 4) throw SchemaError("matrix row " + std::to_string(i) + " must have 4 entries");
    for (int j = 0; j < 4; ++j) {
      const json& entry = row[j];
      const std::string where = "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (entry.is_number()) {
        m(i, j) = Complex(entry.get<double>(), 0.0);
      } else if (entry.is_array() && entry.size() == 2) {
        m(i, j) = Complex(number(entry[0], where + "[0]"), number(entry[1], where + "[1]"));
      } else {
        throw SchemaError(where + " must be a number or a [re, im] pair");
      }
    }
  }
  return TwoQubitState::from_matrix(m);
}

}  // namespace

TwoQubitState parse_state(const json& doc) {
  if (!doc.is_object()) throw SchemaError("state file must contain a JSON object");
  static const std::set<std::string> kSources{"matrix", "xstate", "bell_diagonal", "mixture"};
  std::set<std::string> allowed = kSources;
  allowed.insert("comment");
  reject_unknown_keys(doc, allowed, "state");

  std::string source;
  for (const auto& key : kSources) {
    if (!doc.contains(key)) continue;
    if (!source.empty()) throw SchemaError("state has both \"" + source + "\" and \"" + key + "\"");
    source = key;
  }
  if (source.empty()) {
    throw SchemaError("state needs one of \"matrix\", \"xstate\", \"bell_diagonal\", \"mixture\"");
  }
  const json& body = doc.at(source);

  if (source == "matrix") return parse_matrix(body);
  if (source == "xstate") {
    if (!body.is_object()) throw SchemaError("xstate must be an object");
    reject_unknown_keys(body, {"a", "b", "c", "d", "u", "v", "mu", "nu"}, "xstate");
    XStateParams p;
    p.a = field(body, "a", "xstate", true);
    p.b = field(body, "b", "xstate", true);
    p.c = field(body, "c", "xstate", true);
    p.d = field(body, "d", "xstate", true);
    p.u = field(body, "u", "xstate", false);
    p.v = field(body, "v", "xstate", false);
    p.mu = field(body, "mu", "xstate", false);
    p.nu = field(body, "nu", "xstate", false);
    return make_x_state(p);
  }
  if (source == "bell_diagonal") {
    if (!body.is_array() || body.size() != 3) throw SchemaError("bell_diagonal must be [t1, t2, t3]");
    return make_bell_diagonal_state({number(body[0], "bell_diagonal[0]"),
                                     number(body[1], "bell_diagonal[1]"),
                                     number(body[2], "bell_diagonal[2]")});
  }
  if (!body.is_object()) throw SchemaError("mixture must be an object");
  reject_unknown_keys(body, {"lambda", "alpha", "beta"}, "mixture");
  return make_mixture_state({field(body, "lambda", "mixture", true),
                             field(body, "alpha", "mixture", true),
                             field(body, "beta", "mixture", true)});
}

TwoQubitState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open state file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("state file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_state(doc);
}

json state_to_json(const TwoQubitState& rho) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back({rho(i, j).real(), rho(i, j).imag()});
    rows.push_back(row);
  }
  return json{{"matrix", rows}};
}

void save_state(const std::filesystem::path& path, const TwoQubitState& rho) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write state file " + path.string());
  out << state_to_json(rho).dump(2) << '\n';
}

}  // namespace discordlab::cli
