#pragma once
//
// Minimal structured-config parser (a TOML subset) used for scenario files:
// bare keys, quoted strings, numbers, booleans, single-line inline arrays,
// [table] headers, repeatable [[table]] array-of-tables headers and #
// comments. Errors carry 1-based line numbers.
//

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qllg {

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(const std::string& msg, int line_no)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
};

struct ConfigValue {
  enum class Kind { String, Number, Boolean, Array };
  Kind kind = Kind::Number;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<ConfigValue> array;
  int line = 0;

  // Typed accessors; throw ConfigError naming the expected type.
  const std::string& as_string() const;
  double as_number() const;
  bool as_bool() const;
  const std::vector<ConfigValue>& as_array() const;
  std::vector<double> as_number_array() const;
  std::vector<std::string> as_string_array() const;
};

struct ConfigTable {
  std::map<std::string, ConfigValue> entries;
  int line = 0;  // header line; 0 for the root table

  bool has(const std::string& key) const { return entries.count(key) != 0; }
  const ConfigValue* find(const std::string& key) const;
  // Throws ConfigError when the key is missing.
  const ConfigValue& at(const std::string& key) const;
};

struct ConfigDocument {
  ConfigTable root;
  // [name] tables, at most one each; [[name]] tables, one entry per instance
  // in file order.
  std::map<std::string, ConfigTable> tables;
  std::map<std::string, std::vector<ConfigTable>> table_arrays;
};

ConfigDocument parse_config(const std::string& text);

}  // namespace qllg
