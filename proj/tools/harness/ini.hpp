#ifndef INVGUARD_HARNESS_INI_HPP
#define INVGUARD_HARNESS_INI_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace invguard::harness {

// Carries the offending location so the CLI can print `file:line: [section] key: message`.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& origin, int line, std::string section, std::string key, const std::string& msg);
  int line;
  std::string section;
  std::string key;
};

// Flat key = value text with [section] headers. '#' and ';' start comments. Keys outside any
// section land in the "" section. Duplicate keys and duplicate sections are errors.
class IniDocument {
public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static IniDocument parse(std::istream& in, const std::string& origin = "<config>");
  static IniDocument load(const std::string& path);

  const std::string& origin() const { return origin_; }
  const std::vector<std::string>& sections() const { return order_; }
  bool has_section(const std::string& s) const { return data_.count(s) != 0; }
  bool has(const std::string& s, const std::string& key) const;
  std::vector<std::string> keys(const std::string& s) const;

  // Typed getters; the defaulted forms return the fallback when the key is absent.
  std::string get_string(const std::string& s, const std::string& key) const;
  std::string get_string(const std::string& s, const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& s, const std::string& key) const;
  double get_double(const std::string& s, const std::string& key, double fallback) const;
  long get_long(const std::string& s, const std::string& key, long fallback) const;
  std::uint64_t get_seed(const std::string& s, const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& s, const std::string& key, bool fallback) const;
  std::vector<long> get_long_list(const std::string& s, const std::string& key) const;
  std::vector<std::string> get_list(const std::string& s, const std::string& key) const;

  // Raises ConfigError for any key in section s that is not listed.
  void require_known(const std::string& s, const std::vector<std::string>& known) const;

  [[noreturn]] void fail(const std::string& s, const std::string& key, const std::string& msg) const;
  int line_of(const std::string& s, const std::string& key) const;

private:
  const Entry& entry(const std::string& s, const std::string& key) const;
  std::string origin_;
  std::map<std::string, std::map<std::string, Entry>> data_;
  std::map<std::string, int> section_line_;
  std::vector<std::string> order_;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

} // namespace invguard::harness

#endif
