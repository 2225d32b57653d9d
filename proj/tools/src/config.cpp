#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace sdwave::cli {

namespace {

json radial_datum(const char* family, double amplitude) {
  return {{"family", family}, {"amplitude", amplitude}, {"width", 1.0}, {"unit_mass", false}};
}

json radial_discretization() {
  return {{"t_min", 1.0},     {"t_max", 1e4},       {"points_per_decade", 40},
          {"r_min", 1e-6},    {"r_max", 0.0},       {"panels_per_decade", 48},
          {"refinement", 1}};
}

std::string type_name(const json& v) {
  if (v.is_number()) return "a number";
  if (v.is_boolean()) return "a boolean";
  if (v.is_string()) return "a string";
  if (v.is_array()) return "an array";
  if (v.is_object()) return "an object";
  return "null";
}

bool compatible(const json& def, const json& v) {
  if (def.is_null()) return true;
  if (def.is_number()) return v.is_number();
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_string()) return v.is_string();
  if (def.is_array()) return v.is_array();
  return false;
}

}  // namespace

const std::vector<std::string>& configurable_commands() {
  static const std::vector<std::string> names{"linear-decay", "profile-check", "simulate", "verify"};
  return names;
}

json default_config(const std::string& command) {
  if (command == "linear-decay") {
    return {
        {"problem", {{"n", 3}, {"nu", 1.0}}},
        {"data", {{"u0", radial_datum("gaussian", 1.0)}, {"u1", radial_datum("zero", 0.0)}}},
        {"discretization", radial_discretization()},
        {"analysis",
         {{"u_orders", {0.0}},
          {"ut_orders", {0.0}},
          {"epsilon", 0.1},
          {"tolerance", 0.05},
          {"band_limit", 1.5},
          {"fit_window", nullptr}}},
        {"output", {{"norms", "norms.csv"}, {"fits", "fits.csv"}, {"plot", "norms.gp"}}},
    };
  }
  if (command == "profile-check") {
    return {
        {"problem", {{"n", 2}, {"nu", 1.0}}},
        {"data", {{"u0", radial_datum("zero", 0.0)}, {"u1", radial_datum("gaussian", 1.0)}}},
        {"discretization", radial_discretization()},
        {"analysis", {{"slope_margin", 0.1}, {"convention", "with-nu"}, {"fit_window", nullptr}}},
        {"output", {{"residual", "profile.csv"}, {"plot", "profile.gp"}}},
    };
  }
  if (command == "simulate") {
    return {
        {"problem",
         {{"n", 2}, {"nu", 1.0}, {"a", nullptr}, {"j", 0}, {"p", 6.0}, {"q", nullptr}}},
        {"data", {{"u0", radial_datum("gaussian", 1e-3)}, {"u1", radial_datum("zero", 0.0)}}},
        {"discretization", {{"N", 128}, {"L", 50.0}}},
        {"stepper",
         {{"scheme", "etd2"}, {"dt", 0.05}, {"t_end", 20.0}, {"output_interval", 1.0}, {"dealias", true}}},
        {"analysis", {{"epsilon", 0.1}, {"twin", true}, {"twin_factor", 1.2}}},
        {"output",
         {{"norms", "norms.csv"}, {"twin_norms", "twin_norms.csv"}, {"plot", "norms.gp"},
          {"snapshot_interval", 10.0}, {"summary", "summary.json"}}},
    };
  }
  if (command == "verify") {
    return {
        {"checks", json::array()},
        {"tolerances", {{"growth_limit", 1.05}, {"tau_limit", 0.3}, {"late_slope_limit", 0.02}}},
        {"output", {{"manifest", "checks.csv"}}},
    };
  }
  throw ConfigError("no configuration for command '" + command + "'");
}

void merge_checked(json& base, const json& user, const std::string& path) {
  if (!user.is_object()) {
    throw ConfigError((path.empty() ? std::string("configuration") : "key '" + path + "'") +
                      " must be an object");
  }
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!base.is_object() || !base.contains(it.key())) throw ConfigError("unknown key '" + key + "'");
    json& slot = base[it.key()];
    if (slot.is_object()) {
      merge_checked(slot, it.value(), key);
    } else if (compatible(slot, it.value())) {
      // Nullable slots keep their null default so later overrides stay open.
      slot = it.value();
    } else {
      throw ConfigError("key '" + key + "' expects " + type_name(slot) + ", got " +
                        type_name(it.value()));
    }
  }
}

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set expects key.path=value, got '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json patch = value;
  std::size_t end = key.size();
  while (true) {
    const auto dot = key.rfind('.', end - 1);
    const std::string part = key.substr(dot == std::string::npos ? 0 : dot + 1,
                                        end - (dot == std::string::npos ? 0 : dot + 1));
    if (part.empty()) throw ConfigError("--set: empty key segment in '" + key + "'");
    patch = json{{part, patch}};
    if (dot == std::string::npos) break;
    end = dot;
  }
  // A null default takes any type, so nullable slots are patched directly.
  merge_checked(config, patch);
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file '" + path.string() + "' is not valid JSON");
  return j;
}

const json& at(const json& config, const std::string& dotted) {
  const json* node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = dotted.find('.', start);
    const std::string part = dotted.substr(start, dot - start);
    if (!node->is_object() || !node->contains(part)) throw ConfigError("missing key '" + dotted + "'");
    node = &(*node)[part];
    if (dot == std::string::npos) return *node;
    start = dot + 1;
  }
}

double get_number(const json& config, const std::string& dotted) {
  const json& v = at(config, dotted);
  if (!v.is_number()) throw ConfigError("key '" + dotted + "' expects a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("key '" + dotted + "' must be finite");
  return x;
}

int get_int(const json& config, const std::string& dotted) {
  const double x = get_number(config, dotted);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError("key '" + dotted + "' expects an integer");
  return static_cast<int>(x);
}

bool get_bool(const json& config, const std::string& dotted) {
  const json& v = at(config, dotted);
  if (!v.is_boolean()) throw ConfigError("key '" + dotted + "' expects a boolean");
  return v.get<bool>();
}

std::string get_string(const json& config, const std::string& dotted) {
  const json& v = at(config, dotted);
  if (!v.is_string()) throw ConfigError("key '" + dotted + "' expects a string");
  return v.get<std::string>();
}

std::vector<double> get_numbers(const json& config, const std::string& dotted) {
  const json& v = at(config, dotted);
  if (!v.is_array()) throw ConfigError("key '" + dotted + "' expects an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError("key '" + dotted + "' expects an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::filesystem::path resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("SDWAVE_OUT_DIR"); env && *env) return env;
  return "sdwave-out";
}

}  // namespace sdwave::cli
