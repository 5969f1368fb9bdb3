#include "qllg/config.hpp"

#include <cctype>
#include <cstdlib>

namespace qllg {

namespace {

const char* kind_name(ConfigValue::Kind k) {
  switch (k) {
    case ConfigValue::Kind::String: return "string";
    case ConfigValue::Kind::Number: return "number";
    case ConfigValue::Kind::Boolean: return "boolean";
    case ConfigValue::Kind::Array: return "array";
  }
  return "?";
}

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  int line;

  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  void skip_ws() {
    while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
};

ConfigValue parse_value(Cursor& c);  // forward

ConfigValue parse_scalar(Cursor& c) {
  ConfigValue v;
  v.line = c.line;
  if (c.peek() == '"') {
    v.kind = ConfigValue::Kind::String;
    ++c.i;
    while (!c.done() && c.peek() != '"') {
      char ch = c.peek();
      if (ch == '\\') {
        ++c.i;
        if (c.done()) break;
        switch (c.peek()) {
          case '"': ch = '"'; break;
          case '\\': ch = '\\'; break;
          case 'n': ch = '\n'; break;
          case 't': ch = '\t'; break;
          default:
            throw ConfigError(std::string("unsupported escape '\\") + c.peek() + "'", c.line);
        }
      }
      v.str += ch;
      ++c.i;
    }
    if (c.done()) throw ConfigError("unterminated string", c.line);
    ++c.i;  // closing quote
    return v;
  }
  // bare token: boolean or number
  std::size_t start = c.i;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != '#' &&
         c.peek() != ' ' && c.peek() != '\t') {
    ++c.i;
  }
  const std::string tok = c.s.substr(start, c.i - start);
  if (tok.empty()) throw ConfigError("expected a value", c.line);
  if (tok == "true" || tok == "false") {
    v.kind = ConfigValue::Kind::Boolean;
    v.boolean = (tok == "true");
    return v;
  }
  char* end = nullptr;
  v.num = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') {
    throw ConfigError("cannot parse value '" + tok + "' (strings need quotes)", c.line);
  }
  v.kind = ConfigValue::Kind::Number;
  return v;
}

ConfigValue parse_value(Cursor& c) {
  c.skip_ws();
  if (c.done()) throw ConfigError("expected a value", c.line);
  if (c.peek() != '[') return parse_scalar(c);
  ConfigValue v;
  v.kind = ConfigValue::Kind::Array;
  v.line = c.line;
  ++c.i;  // '['
  c.skip_ws();
  if (!c.done() && c.peek() == ']') {
    ++c.i;
    return v;
  }
  while (true) {
    v.array.push_back(parse_value(c));
    c.skip_ws();
    if (c.done()) throw ConfigError("unterminated array", c.line);
    if (c.peek() == ',') {
      ++c.i;
      c.skip_ws();
      continue;
    }
    if (c.peek() == ']') {
      ++c.i;
      return v;
    }
    throw ConfigError("expected ',' or ']' in array", c.line);
  }
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_string) {
      if (ch == '\\') ++i;
      else if (ch == '"') in_string = false;
    } else if (ch == '"') {
      in_string = true;
    } else if (ch == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

const std::string& ConfigValue::as_string() const {
  if (kind != Kind::String) {
    throw ConfigError(std::string("expected a string, got ") + kind_name(kind), line);
  }
  return str;
}

double ConfigValue::as_number() const {
  if (kind != Kind::Number) {
    throw ConfigError(std::string("expected a number, got ") + kind_name(kind), line);
  }
  return num;
}

bool ConfigValue::as_bool() const {
  if (kind != Kind::Boolean) {
    throw ConfigError(std::string("expected a boolean, got ") + kind_name(kind), line);
  }
  return boolean;
}

const std::vector<ConfigValue>& ConfigValue::as_array() const {
  if (kind != Kind::Array) {
    throw ConfigError(std::string("expected an array, got ") + kind_name(kind), line);
  }
  return array;
}

std::vector<double> ConfigValue::as_number_array() const {
  std::vector<double> out;
  for (const auto& v : as_array()) out.push_back(v.as_number());
  return out;
}

std::vector<std::string> ConfigValue::as_string_array() const {
  std::vector<std::string> out;
  for (const auto& v : as_array()) out.push_back(v.as_string());
  return out;
}

const ConfigValue* ConfigTable::find(const std::string& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

const ConfigValue& ConfigTable::at(const std::string& key) const {
  const ConfigValue* v = find(key);
  if (!v) throw ConfigError("missing required key '" + key + "'", line);
  return *v;
}

ConfigDocument parse_config(const std::string& text) {
  ConfigDocument doc;
  ConfigTable* current = &doc.root;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string raw = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string body = trim(strip_comment(raw));
    if (body.empty()) continue;

    if (body.front() == '[') {
      const bool is_array = body.size() > 1 && body[1] == '[';
      const std::string closer = is_array ? "]]" : "]";
      const std::size_t name_start = is_array ? 2 : 1;
      const std::size_t name_end = body.find(closer, name_start);
      if (name_end == std::string::npos || trim(body.substr(name_end + closer.size())) != "") {
        throw ConfigError("malformed table header '" + body + "'", line_no);
      }
      const std::string name = trim(body.substr(name_start, name_end - name_start));
      if (name.empty()) throw ConfigError("empty table name", line_no);
      for (char ch : name) {
        if (!is_bare_key_char(ch)) {
          throw ConfigError("invalid table name '" + name + "'", line_no);
        }
      }
      if (is_array) {
        auto& vec = doc.table_arrays[name];
        vec.emplace_back();
        vec.back().line = line_no;
        current = &vec.back();
      } else {
        if (doc.tables.count(name)) {
          throw ConfigError("table [" + name + "] declared twice", line_no);
        }
        auto& tbl = doc.tables[name];
        tbl.line = line_no;
        current = &tbl;
      }
      continue;
    }

    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value' or a [table] header", line_no);
    }
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError("empty key", line_no);
    for (char ch : key) {
      if (!is_bare_key_char(ch)) {
        throw ConfigError("invalid key '" + key + "'", line_no);
      }
    }
    if (current->entries.count(key)) {
      throw ConfigError("duplicate key '" + key + "'", line_no);
    }
    const std::string value_text = trim(body.substr(eq + 1));
    Cursor c{value_text, 0, line_no};
    ConfigValue value = parse_value(c);
    c.skip_ws();
    if (!c.done()) {
      throw ConfigError("trailing characters after value", line_no);
    }
    value.line = line_no;
    current->entries.emplace(key, std::move(value));
  }
  return doc;
}

}  // namespace qllg
