#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aoisim {

// Configuration / CLI usage error; maps to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Line-oriented "key = value" file with [section] headers. '#' starts a
// comment. Keys are unique per section; every parse error names the line.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text, const std::string& name = "<config>");

  bool has(const std::string& section, const std::string& key) const;

  // Lookups mark the key as consumed; check_all_consumed() then rejects
  // unknown keys (typos) with their line numbers.
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::string require(const std::string& section, const std::string& key) const;

  std::optional<double> get_double(const std::string& section, const std::string& key) const;
  std::optional<long> get_long(const std::string& section, const std::string& key) const;
  std::optional<std::uint64_t> get_u64(const std::string& section, const std::string& key) const;
  std::optional<bool> get_bool(const std::string& section, const std::string& key) const;

  // CLI overrides; replaces any file value.
  void set(const std::string& section, const std::string& key, const std::string& value);

  void check_all_consumed() const;

  // "[section] key = value" lines in file order, for metadata echo.
  std::vector<std::string> canonical_lines() const;

  const std::string& name() const { return name_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
    int order = 0;
    mutable bool consumed = false;
  };
  std::string name_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
  int next_order_ = 0;

  [[noreturn]] void fail_at(int line, const std::string& msg) const;
};

// Comma-separated list helpers used by the experiment configs.
std::vector<std::string> split_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text, const std::string& ctx);
// "4..64" ranges or comma lists of integers.
std::vector<int> parse_int_list_or_range(const std::string& text, const std::string& ctx);

}  // namespace aoisim
