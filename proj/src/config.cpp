#include "aoisim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace aoisim {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void ConfigFile::fail_at(int line, const std::string& msg) const {
  throw ConfigError(name_ + ":" + std::to_string(line) + ": " + msg);
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& name) {
  ConfigFile cf;
  cf.name_ = name;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') cf.fail_at(lineno, "unterminated section header '" + raw + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) cf.fail_at(lineno, "empty section name");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      cf.fail_at(lineno, "expected 'key = value', got '" + trim(raw) + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) cf.fail_at(lineno, "missing key before '='");
    if (value.empty()) cf.fail_at(lineno, "missing value for key '" + key + "'");
    if (section.empty()) cf.fail_at(lineno, "key '" + key + "' outside any [section]");
    auto [it, inserted] = cf.sections_[section].emplace(key, Entry{value, lineno, cf.next_order_++});
    if (!inserted)
      cf.fail_at(lineno, "duplicate key '" + key + "' in [" + section + "] (first at line " +
                             std::to_string(it->second.line) + ")");
  }
  return cf;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::optional<std::string> ConfigFile::get(const std::string& section,
                                           const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  k->second.consumed = true;
  return k->second.value;
}

std::string ConfigFile::require(const std::string& section, const std::string& key) const {
  auto v = get(section, key);
  if (!v) throw ConfigError(name_ + ": missing required key '" + key + "' in [" + section + "]");
  return *v;
}

std::optional<double> ConfigFile::get_double(const std::string& section,
                                             const std::string& key) const {
  auto v = get(section, key);
  if (!v) return std::nullopt;
  char* end = nullptr;
  const double d = std::strtod(v->c_str(), &end);
  if (end == v->c_str() || *end != '\0')
    throw ConfigError(name_ + ": [" + section + "] " + key + " = '" + *v + "' is not a number");
  return d;
}

std::optional<long> ConfigFile::get_long(const std::string& section, const std::string& key) const {
  auto v = get(section, key);
  if (!v) return std::nullopt;
  char* end = nullptr;
  const long l = std::strtol(v->c_str(), &end, 10);
  if (end == v->c_str() || *end != '\0')
    throw ConfigError(name_ + ": [" + section + "] " + key + " = '" + *v + "' is not an integer");
  return l;
}

std::optional<std::uint64_t> ConfigFile::get_u64(const std::string& section,
                                                 const std::string& key) const {
  auto v = get(section, key);
  if (!v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long u = std::strtoull(v->c_str(), &end, 10);
  if (end == v->c_str() || *end != '\0')
    throw ConfigError(name_ + ": [" + section + "] " + key + " = '" + *v +
                      "' is not an unsigned integer");
  return static_cast<std::uint64_t>(u);
}

std::optional<bool> ConfigFile::get_bool(const std::string& section, const std::string& key) const {
  auto v = get(section, key);
  if (!v) return std::nullopt;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError(name_ + ": [" + section + "] " + key + " = '" + *v + "' is not a boolean");
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
  auto& entry = sections_[section][key];
  entry.value = value;
  entry.line = 0;
  entry.order = next_order_++;
  entry.consumed = false;
}

void ConfigFile::check_all_consumed() const {
  for (const auto& [section, keys] : sections_)
    for (const auto& [key, entry] : keys)
      if (!entry.consumed)
        fail_at(entry.line,
                "unknown key '" + key + "' in [" + section + "] for this experiment");
}

std::vector<std::string> ConfigFile::canonical_lines() const {
  std::vector<std::pair<int, std::string>> ordered;
  for (const auto& [section, keys] : sections_)
    for (const auto& [key, entry] : keys)
      ordered.emplace_back(entry.order, "[" + section + "] " + key + " = " + entry.value);
  std::sort(ordered.begin(), ordered.end());
  std::vector<std::string> out;
  out.reserve(ordered.size());
  for (auto& [_, line] : ordered) out.push_back(std::move(line));
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& ctx) {
  std::vector<double> out;
  for (const std::string& tok : split_list(text)) {
    char* end = nullptr;
    const double d = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end == tok.c_str() || *end != '\0')
      throw ConfigError(ctx + ": '" + tok + "' is not a number");
    out.push_back(d);
  }
  return out;
}

std::vector<int> parse_int_list_or_range(const std::string& text, const std::string& ctx) {
  if (size_t dots = text.find(".."); dots != std::string::npos) {
    const std::string lo_s = trim(text.substr(0, dots));
    const std::string hi_s = trim(text.substr(dots + 2));
    char *e1 = nullptr, *e2 = nullptr;
    const long lo = std::strtol(lo_s.c_str(), &e1, 10);
    const long hi = std::strtol(hi_s.c_str(), &e2, 10);
    if (lo_s.empty() || hi_s.empty() || *e1 != '\0' || *e2 != '\0' || lo > hi)
      throw ConfigError(ctx + ": bad range '" + text + "' (expected lo..hi)");
    std::vector<int> out;
    for (long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
    return out;
  }
  std::vector<int> out;
  for (const std::string& tok : split_list(text)) {
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (tok.empty() || end == tok.c_str() || *end != '\0')
      throw ConfigError(ctx + ": '" + tok + "' is not an integer");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace aoisim
