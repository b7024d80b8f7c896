#include "lzslab/runconfig.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lzslab/errors.hpp"
#include "lzslab/version.hpp"

namespace lzslab {

using json = nlohmann::ordered_json;

namespace {

json param_to_json(const ParamValue& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

ParamValue param_from_json(const json& j, const std::string& key) {
  if (j.is_number_integer()) return static_cast<long long>(j.get<long long>());
  if (j.is_number_float()) return j.get<double>();
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::vector<double> vals;
    for (const auto& e : j) {
      if (!e.is_number()) {
        throw ValidationError("parameter '" + key + "': arrays must be numeric");
      }
      vals.push_back(e.get<double>());
    }
    return vals;
  }
  throw ValidationError("parameter '" + key + "': unsupported JSON type");
}

[[noreturn]] void missing(const std::string& key) {
  throw ValidationError("missing required parameter '" + key + "'");
}

}  // namespace

double RunConfig::get_real(const std::string& key, std::optional<double> fallback) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) {
    if (fallback) return *fallback;
    missing(key);
  }
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  if (const auto* i = std::get_if<long long>(&it->second)) return static_cast<double>(*i);
  throw ValidationError("parameter '" + key + "' must be a real number");
}

long long RunConfig::get_int(const std::string& key, std::optional<long long> fallback) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) {
    if (fallback) return *fallback;
    missing(key);
  }
  if (const auto* i = std::get_if<long long>(&it->second)) return *i;
  throw ValidationError("parameter '" + key + "' must be an integer");
}

bool RunConfig::get_bool(const std::string& key, std::optional<bool> fallback) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) {
    if (fallback) return *fallback;
    missing(key);
  }
  if (const auto* b = std::get_if<bool>(&it->second)) return *b;
  throw ValidationError("parameter '" + key + "' must be a boolean");
}

std::vector<double> RunConfig::get_reals(const std::string& key,
                                         std::optional<std::vector<double>> fallback) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) {
    if (fallback) return *fallback;
    missing(key);
  }
  if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
  if (const auto* d = std::get_if<double>(&it->second)) return {*d};
  throw ValidationError("parameter '" + key + "' must be a numeric array");
}

std::string RunConfig::to_json() const {
  json j;
  j["command"] = command;
  json params = json::object();
  for (const auto& [k, v] : parameters) params[k] = param_to_json(v);
  j["parameters"] = params;
  j["output_path"] = output_path;
  return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  RunConfig cfg;
  if (!j.is_object()) throw ValidationError("config root must be an object");
  if (!j.contains("command") || !j["command"].is_string()) {
    throw ValidationError("config needs a string 'command'");
  }
  cfg.command = j["command"].get<std::string>();
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) throw ValidationError("'parameters' must be an object");
    for (const auto& [k, v] : j["parameters"].items()) {
      cfg.parameters[k] = param_from_json(v, k);
    }
  }
  if (j.contains("output_path")) cfg.output_path = j["output_path"].get<std::string>();
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void RunConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write config file: " + path);
  out << to_json();
}

namespace {
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void write_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write output file: " + path);
  out << "# lzslab " << kVersion << "\n";
  out << "# command: " << result.config_echo.command << "\n";
  for (const auto& [k, v] : result.config_echo.parameters) {
    json jv = param_to_json(v);
    out << "# param " << k << " = " << jv.dump() << "\n";
  }
  out << result.axis_name;
  for (const auto& c : result.curves) out << "," << c.name;
  out << "\n";
  for (std::size_t i = 0; i < result.axis.size(); ++i) {
    out << fmt17(result.axis[i]);
    for (const auto& c : result.curves) {
      out << "," << (i < c.values.size() ? fmt17(c.values[i]) : "");
    }
    out << "\n";
  }
}

std::string resolve_output_path(const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  const char* root = std::getenv("LZSLAB_OUT_DIR");
  if (root == nullptr || root[0] == '\0') return path;
  return (std::filesystem::path(root) / p).string();
}

}  // namespace lzslab
