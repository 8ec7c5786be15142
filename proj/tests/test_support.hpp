#pragma once

// Shared helpers for the unit suites and the acceptance runner: a structural
// JSON Schema checker covering the subset our published schemas use, stdout
// capture around racp::cli::run, and scratch-directory management.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace testsup {

using nlohmann::json;

inline bool type_matches(const json& value, const std::string& t) {
  if (t == "object") return value.is_object();
  if (t == "array") return value.is_array();
  if (t == "string") return value.is_string();
  if (t == "integer") return value.is_number_integer();
  if (t == "number") return value.is_number();
  if (t == "boolean") return value.is_boolean();
  if (t == "null") return value.is_null();
  return false;
}

// Validates `value` against the schema subset we publish: type (single or
// alternatives), enum, required, properties, items, minItems, maxItems,
// minimum. Appends human-readable violations to `errors`.
inline void validate_schema(const json& value, const json& schema, const std::string& where,
                            std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(value, t.get<std::string>());
    } else {
      for (const auto& alt : t)
        if (type_matches(value, alt.get<std::string>())) ok = true;
    }
    if (!ok) {
      errors.push_back(where + ": type mismatch, got " + value.dump().substr(0, 40));
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& alt : schema["enum"])
      if (value == alt) ok = true;
    if (!ok) errors.push_back(where + ": value " + value.dump() + " not in enum");
  }
  if (schema.contains("minimum") && value.is_number()) {
    if (value.get<double>() < schema["minimum"].get<double>())
      errors.push_back(where + ": below minimum");
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          errors.push_back(where + ": missing required key " + key.get<std::string>());
    }
    if (schema.contains("properties")) {
      for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
        if (value.contains(it.key()))
          validate_schema(value.at(it.key()), it.value(), where + "." + it.key(), errors);
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>())
      errors.push_back(where + ": too few items");
    if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>())
      errors.push_back(where + ": too many items");
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < value.size(); ++i)
        validate_schema(value[i], schema["items"], where + "[" + std::to_string(i) + "]",
                        errors);
    }
  }
}

inline std::vector<std::string> schema_violations(const json& value, const json& schema) {
  std::vector<std::string> errors;
  validate_schema(value, schema, "$", errors);
  return errors;
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return json::parse(in);
}

// Repo-relative schema lookup: tests run from the build tree, so walk up from
// the current directory until docs/schemas appears.
inline std::filesystem::path schema_dir() {
  std::filesystem::path p = std::filesystem::current_path();
  for (int depth = 0; depth < 8; ++depth) {
    if (std::filesystem::exists(p / "docs" / "schemas")) return p / "docs" / "schemas";
    if (!p.has_parent_path() || p.parent_path() == p) break;
    p = p.parent_path();
  }
  throw std::runtime_error("docs/schemas not found above " +
                           std::filesystem::current_path().string());
}

inline json load_schema(const std::string& name) {
  return load_json((schema_dir() / name).string());
}

// Fresh scratch directory, removed on destruction.
struct ScratchDir {
  std::filesystem::path path;

  ScratchDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path = std::filesystem::temp_directory_path() /
           ("racp_test_" + std::to_string(rng()));
    std::filesystem::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

// Captures std::cout for the duration of a callback; returns what was printed.
template <typename Fn>
std::string capture_stdout(Fn&& fn, int& exit_code) {
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  try {
    exit_code = fn();
  } catch (...) {
    std::cout.rdbuf(old);
    throw;
  }
  std::cout.rdbuf(old);
  return captured.str();
}

}  // namespace testsup
