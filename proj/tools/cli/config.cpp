#include "config.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ellt/errors.hpp"

namespace ellt::cli {

using nlohmann::ordered_json;

namespace {

const std::map<std::string, std::set<std::string>>& allowed_params() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"dims", {"W", "caps", "basis"}},
      {"basis", {"divisor"}},
      {"coeff", {"range"}},
      {"divpoly", {"n"}},
      {"kmodel", {"group", "W", "sign"}},
      {"completion", {"k"}},
      {"localcoh", {"pi", "a"}},
      {"serre", {"divisor"}},
      {"sections", {"divisor", "pi", "cap"}},
      {"glue", {"divisor", "pi", "pi2", "cap"}},
      {"roundtrip", {"V", "opens", "caps"}},
      {"cache", {"action", "n"}},
  };
  return table;
}

void reject_unknown(const ordered_json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

exact::Rational rational_field(const ordered_json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + "." + key + " is required");
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + " must be a rational string such as \"-1\" or \"3/4\"");
  try {
    return exact::parse_rational(v.get<std::string>());
  } catch (const ValidationError& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

std::filesystem::path path_field(const ordered_json& v, const std::string& key) {
  if (!v.is_string() || v.get<std::string>().empty()) throw ConfigError(key + " must be a non-empty string");
  return v.get<std::string>();
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (auto& [k, v] : allowed_params()) out.push_back(k);
    return out;
  }();
  return names;
}

JobConfig parse_config(const ordered_json& doc, const std::string& command) {
  reject_unknown(doc, {"curve", "coordinate", "command", "params", "cache_path", "output_path", "format"}, "config");
  JobConfig cfg;
  if (doc.contains("command")) {
    if (!doc["command"].is_string()) throw ConfigError("command must be a string");
    cfg.command = doc["command"].get<std::string>();
    if (!command.empty() && command != cfg.command)
      throw ConfigError("command line says '" + command + "' but the config says '" + cfg.command + "'");
  } else {
    cfg.command = command;
  }
  if (cfg.command.empty()) throw ConfigError("no command given");
  auto it = allowed_params().find(cfg.command);
  if (it == allowed_params().end()) throw ConfigError("unknown command '" + cfg.command + "'");

  if (doc.contains("curve")) {
    const auto& c = doc["curve"];
    reject_unknown(c, {"a", "b"}, "curve");
    cfg.curve = CurveSpec{rational_field(c, "a", "curve"), rational_field(c, "b", "curve")};
  }
  if (doc.contains("coordinate")) {
    const auto& c = doc["coordinate"];
    reject_unknown(c, {"form", "scale"}, "coordinate");
    if (c.contains("form") && c["form"] != "x/y") throw ConfigError("coordinate.form must be \"x/y\"");
    if (c.contains("scale")) {
      cfg.scale = rational_field(c, "scale", "coordinate");
      if (exact::is_zero(cfg.scale)) throw ConfigError("coordinate.scale must be nonzero");
    }
  }
  if (doc.contains("params")) {
    reject_unknown(doc["params"], it->second, "params of '" + cfg.command + "'");
    cfg.params = doc["params"];
  }
  if (doc.contains("cache_path")) cfg.cache_path = path_field(doc["cache_path"], "cache_path");
  if (doc.contains("output_path")) cfg.output_path = path_field(doc["output_path"], "output_path");
  if (doc.contains("format")) {
    if (doc["format"] == "json")
      cfg.format = Format::json;
    else if (doc["format"] == "csv")
      cfg.format = Format::csv;
    else
      throw ConfigError("format must be \"json\" or \"csv\"");
  }
  return cfg;
}

JobConfig parse_config_text(const std::string& text, const std::string& command) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc, command);
}

BatchConfig parse_batch(const ordered_json& doc) {
  reject_unknown(doc, {"jobs", "threads", "cache_path"}, "batch");
  if (!doc.contains("jobs") || !doc["jobs"].is_array() || doc["jobs"].empty())
    throw ConfigError("batch.jobs must be a non-empty array");
  BatchConfig b;
  if (doc.contains("threads")) {
    if (!doc["threads"].is_number_unsigned() || doc["threads"].get<unsigned>() == 0)
      throw ConfigError("batch.threads must be a positive integer");
    b.threads = doc["threads"].get<unsigned>();
  }
  if (doc.contains("cache_path")) b.cache_path = path_field(doc["cache_path"], "cache_path");
  std::set<std::filesystem::path> outs;
  for (const auto& j : doc["jobs"]) {
    JobConfig cfg = parse_config(j);
    if (!cfg.output_path) throw ConfigError("every batch job needs an output_path");
    if (cfg.command == "cache") throw ConfigError("cache administration cannot run inside a batch");
    if (cfg.cache_path) throw ConfigError("batch jobs share the batch cache_path; drop it from the job");
    if (!outs.insert(*cfg.output_path).second)
      throw ConfigError("two batch jobs write " + cfg.output_path->string());
    b.jobs.push_back(std::move(cfg));
  }
  return b;
}

}  // namespace ellt::cli
