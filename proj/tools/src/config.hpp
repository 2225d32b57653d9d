#pragma once
// Run configuration: per-command JSON defaults, strict merging of user
// files and --set overrides, and typed accessors.
//
// Precedence (later wins): built-in defaults < --config file < --set
// key.path=value < dedicated flags (--seed, --jobs, --strict, --out).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdwave/params.hpp"

namespace sdwave::cli {

using json = nlohmann::json;

/// Any problem with the configuration; maps to exit code 2.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Commands that take a configuration.
const std::vector<std::string>& configurable_commands();

/// The complete default configuration of a command; every key a user may set
/// appears here.
json default_config(const std::string& command);

/// Merges `user` into `base`. Unknown keys and type mismatches raise
/// ConfigError with the dotted key path. A null default accepts any value.
void merge_checked(json& base, const json& user, const std::string& path = "");

/// Applies "a.b.c=value"; the value is parsed as JSON, falling back to a
/// plain string.
void apply_override(json& config, const std::string& assignment);

json load_config_file(const std::filesystem::path& path);

/// Typed lookups by dotted path; mismatches raise ConfigError.
const json& at(const json& config, const std::string& dotted);
double get_number(const json& config, const std::string& dotted);
int get_int(const json& config, const std::string& dotted);
bool get_bool(const json& config, const std::string& dotted);
std::string get_string(const json& config, const std::string& dotted);
std::vector<double> get_numbers(const json& config, const std::string& dotted);

/// Output directory: --out if given, else $SDWAVE_OUT_DIR, else ./sdwave-out.
std::filesystem::path resolve_out_dir(const std::string& flag_value);

}  // namespace sdwave::cli
