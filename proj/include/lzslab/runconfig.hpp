#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lzslab {

using ParamValue = std::variant<double, long long, bool, std::string, std::vector<double>>;

// One CLI run: command name, typed parameter map, output path.  Round-trips
// losslessly through JSON.
struct RunConfig {
  std::string command;
  std::map<std::string, ParamValue> parameters;
  std::string output_path;

  double get_real(const std::string& key, std::optional<double> fallback = {}) const;
  long long get_int(const std::string& key, std::optional<long long> fallback = {}) const;
  bool get_bool(const std::string& key, std::optional<bool> fallback = {}) const;
  std::vector<double> get_reals(const std::string& key,
                                std::optional<std::vector<double>> fallback = {}) const;

  std::string to_json() const;            // stable key order, 2-space indent
  static RunConfig from_json(const std::string& text);
  static RunConfig load(const std::string& path);
  void save(const std::string& path) const;
};

struct Curve {
  std::string name;
  std::vector<double> values;
};

struct SweepResult {
  std::string axis_name;
  std::vector<double> axis;
  std::vector<Curve> curves;
  RunConfig config_echo;
};

// CSV with '#'-prefixed metadata header rows (artifact version, command,
// parameter echo), 17 significant digits, '.' decimal separator.
void write_csv(const SweepResult& result, const std::string& path);

// Resolves against LZSLAB_OUT_DIR when `path` is relative and the variable
// is set.
std::string resolve_output_path(const std::string& path);

}  // namespace lzslab
