#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace hocomp::cli {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

json parse_value(const std::string& raw) {
  if (raw == "inf" || raw == "+inf" || raw == "INFINITE") return "inf";
  static const std::regex bare_inf(R"((^|[\[,\s])(inf|INFINITE)(?=[\],\s]|$))");
  const std::string quoted = std::regex_replace(raw, bare_inf, "$1\"inf\"");
  json v = json::parse(quoted, nullptr, false);
  if (v.is_discarded()) return raw;  // bare words read as strings
  return v;
}

struct Reader {
  std::string key;
  json value;

  [[noreturn]] void bad(const std::string& what) const {
    throw ConfigError("key '" + key + "': " + what);
  }

  double number() const {
    if (value.is_number()) return value.get<double>();
    if (value.is_string() && value.get<std::string>() == "inf") return kInf;
    bad("expected a number");
  }
  std::int64_t integer() const {
    if (!value.is_number_integer()) bad("expected an integer");
    return value.get<std::int64_t>();
  }
  bool boolean() const {
    if (!value.is_boolean()) bad("expected true or false");
    return value.get<bool>();
  }
  std::string text() const {
    if (!value.is_string()) bad("expected a word");
    return value.get<std::string>();
  }
  std::vector<double> numbers() const {
    if (!value.is_array()) bad("expected a list of numbers");
    std::vector<double> out;
    for (const json& item : value) out.push_back(Reader{key, item}.number());
    return out;
  }
  std::array<double, 2> pair() const {
    const std::vector<double> v = numbers();
    if (v.size() != 2) bad("expected two numbers");
    return {v[0], v[1]};
  }
};

void apply(RunConfig& c, const std::string& section, const Reader& r) {
  const std::string& k = r.key;
  if (section.empty()) {
    if (k == "seed") {
      const std::int64_t s = r.integer();
      if (s < 0) r.bad("seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
      return;
    }
  } else if (section == "shape") {
    if (k == "shape") return void(c.shape = r.text());
    if (k == "center") return void(c.center = r.pair());
    if (k == "radius") return void(c.radius = r.number());
    if (k == "half_side") return void(c.half_side = r.number());
    if (k == "vertices") {
      if (!r.value.is_array()) r.bad("expected a list of [x, y] pairs");
      c.vertices.clear();
      for (const json& v : r.value) c.vertices.push_back(Reader{k, v}.pair());
      return;
    }
  } else if (section == "metric") {
    if (k == "beta") return void(c.beta = r.number());
    if (k == "p") return void(c.p = r.number());
    if (k == "p_list") return void(c.p_list = r.numbers());
    if (k == "epsilon") return void(c.epsilon = r.number());
    if (k == "epsilon_list") return void(c.epsilon_list = r.numbers());
  } else if (section == "solver") {
    if (k == "nodes_per_cell") return void(c.nodes_per_cell = static_cast<int>(r.integer()));
    if (k == "stencil") {
      const std::string s = r.value.is_string() ? r.text() : std::to_string(r.integer());
      if (s == "8" || s == "N8" || s == "n8") return void(c.stencil = 8);
      if (s == "16" || s == "N16" || s == "n16") return void(c.stencil = 16);
      r.bad("stencil must be N8 or N16");
    }
    if (k == "padding_cells") return void(c.padding_cells = r.number());
  } else if (section == "experiment") {
    if (k == "k_range") {
      if (!r.value.is_array()) r.bad("expected [first, last]");
      std::vector<int> ks;
      for (const json& v : r.value) ks.push_back(static_cast<int>(Reader{k, v}.integer()));
      return void(c.k_range = ks);
    }
    if (k == "n_pairs") return void(c.n_pairs = r.integer());
    if (k == "directions") return void(c.directions = r.integer());
    if (k == "R_list") return void(c.R_list = r.numbers());
  } else if (section == "output") {
    if (k == "out_dir") return void(c.out_dir = r.text());
    if (k == "emit_svg") return void(c.emit_svg = r.boolean());
  } else {
    throw ConfigError("unknown section [" + section + "]");
  }
  throw ConfigError("unknown key '" + k + "'" + (section.empty() ? "" : " in [" + section + "]"));
}

json number_json(double x) { return std::isinf(x) ? json("inf") : json(x); }

json numbers_json(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(number_json(x));
  return out;
}

}  // namespace

RunConfig::RunConfig() : p_list{0.5, 1.0, 2.0, kInf}, epsilon_list{1.0 / 3, 1.0 / 5, 1.0 / 9, 1.0 / 17, 1.0 / 33} {}

std::string RunConfig::canonical() const {
  json j;
  j["seed"] = seed;
  j["shape"] = {{"shape", shape}, {"center", center}, {"radius", radius}, {"half_side", half_side},
                {"vertices", vertices}};
  j["metric"] = {{"beta", beta},
                 {"p", number_json(p)},
                 {"p_list", numbers_json(p_list)},
                 {"epsilon", epsilon},
                 {"epsilon_list", numbers_json(epsilon_list)}};
  j["solver"] = {{"nodes_per_cell", nodes_per_cell}, {"stencil", stencil}, {"padding_cells", padding_cells}};
  j["experiment"] = {{"k_range", k_range}, {"n_pairs", n_pairs}, {"directions", directions}, {"R_list", R_list}};
  j["output"] = {{"emit_svg", emit_svg}};
  return j.dump();
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
  return buf;
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError(where + "unterminated section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (section != "shape" && section != "metric" && section != "solver" && section != "experiment" &&
          section != "output")
        throw ConfigError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    Reader r{trim(std::string_view(t).substr(0, eq)), parse_value(trim(std::string_view(t).substr(eq + 1)))};
    try {
      apply(c, section, r);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace hocomp::cli
