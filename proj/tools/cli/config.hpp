#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ellt/exact/rational.hpp"

namespace ellt::cli {

// Malformed or inconsistent configuration; exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

struct CurveSpec {
  exact::Rational a, b;
};

struct JobConfig {
  std::string command;
  std::optional<CurveSpec> curve;
  exact::Rational scale{1};
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::optional<std::filesystem::path> cache_path;
  std::optional<std::filesystem::path> output_path;
  Format format = Format::json;
};

const std::vector<std::string>& command_names();

// `command` from the command line wins when the document has none; a
// conflicting value is an error.
JobConfig parse_config(const nlohmann::ordered_json& doc, const std::string& command = {});
JobConfig parse_config_text(const std::string& text, const std::string& command = {});

// A batch document: {"jobs": [...], "threads": n}.
struct BatchConfig {
  std::vector<JobConfig> jobs;
  unsigned threads = 1;
  std::optional<std::filesystem::path> cache_path;
};
BatchConfig parse_batch(const nlohmann::ordered_json& doc);

}  // namespace ellt::cli
