#include "harness/ini.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <fstream>
#include <sstream>

namespace invguard::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  const auto p = s.find_first_of("#;");
  return p == std::string::npos ? s : s.substr(0, p);
}

std::string where(const std::string& origin, int line) {
  return line > 0 ? origin + ":" + std::to_string(line) : origin;
}

} // namespace

ConfigError::ConfigError(const std::string& origin, int l, std::string s, std::string k, const std::string& msg)
    : std::runtime_error(where(origin, l) + ": " + (s.empty() && k.empty() ? "" : "[" + s + "] " + k + ": ") + msg),
      line(l), section(std::move(s)), key(std::move(k)) {}

IniDocument IniDocument::parse(std::istream& in, const std::string& origin) {
  IniDocument doc;
  doc.origin_ = origin;
  doc.data_[""];
  doc.section_line_[""] = 0;
  std::string current, raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(origin, line, "", "", "unterminated section header");
      current = trim(s.substr(1, s.size() - 2));
      if (current.empty()) throw ConfigError(origin, line, "", "", "empty section name");
      if (doc.data_.count(current) && current != "")
        throw ConfigError(origin, line, current, "", "duplicate section");
      doc.data_[current];
      doc.section_line_[current] = line;
      doc.order_.push_back(current);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(origin, line, current, "", "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin, line, current, "", "empty key");
    auto& sec = doc.data_[current];
    if (sec.count(key)) throw ConfigError(origin, line, current, key, "duplicate key");
    sec[key] = Entry{value, line};
  }
  return doc;
}

IniDocument IniDocument::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, 0, "", "", "cannot open config file");
  return parse(f, path);
}

bool IniDocument::has(const std::string& s, const std::string& key) const {
  auto it = data_.find(s);
  return it != data_.end() && it->second.count(key);
}

std::vector<std::string> IniDocument::keys(const std::string& s) const {
  std::vector<std::string> out;
  auto it = data_.find(s);
  if (it == data_.end()) return out;
  for (const auto& [k, v] : it->second) out.push_back(k);
  return out;
}

int IniDocument::line_of(const std::string& s, const std::string& key) const {
  auto it = data_.find(s);
  if (it == data_.end()) return 0;
  auto e = it->second.find(key);
  if (e != it->second.end()) return e->second.line;
  auto sl = section_line_.find(s);
  return sl == section_line_.end() ? 0 : sl->second;
}

void IniDocument::fail(const std::string& s, const std::string& key, const std::string& msg) const {
  throw ConfigError(origin_, line_of(s, key), s, key, msg);
}

const IniDocument::Entry& IniDocument::entry(const std::string& s, const std::string& key) const {
  auto it = data_.find(s);
  if (it == data_.end()) fail(s, key, "missing section");
  auto e = it->second.find(key);
  if (e == it->second.end()) fail(s, key, "missing required key");
  return e->second;
}

std::string IniDocument::get_string(const std::string& s, const std::string& key) const {
  return entry(s, key).value;
}

std::string IniDocument::get_string(const std::string& s, const std::string& key, const std::string& fallback) const {
  return has(s, key) ? get_string(s, key) : fallback;
}

double IniDocument::get_double(const std::string& s, const std::string& key) const {
  const auto& v = entry(s, key).value;
  // strtod rather than from_chars: libstdc++ 11 lacks the floating-point overload on some targets
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) fail(s, key, "expected a number, got '" + v + "'");
  return x;
}

double IniDocument::get_double(const std::string& s, const std::string& key, double fallback) const {
  return has(s, key) ? get_double(s, key) : fallback;
}

long IniDocument::get_long(const std::string& s, const std::string& key, long fallback) const {
  if (!has(s, key)) return fallback;
  const auto& v = entry(s, key).value;
  long x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) fail(s, key, "expected an integer, got '" + v + "'");
  return x;
}

std::uint64_t IniDocument::get_seed(const std::string& s, const std::string& key, std::uint64_t fallback) const {
  if (!has(s, key)) return fallback;
  const auto& v = entry(s, key).value;
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) fail(s, key, "expected a non-negative integer, got '" + v + "'");
  return x;
}

bool IniDocument::get_bool(const std::string& s, const std::string& key, bool fallback) const {
  if (!has(s, key)) return fallback;
  std::string v = entry(s, key).value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  fail(s, key, "expected a boolean, got '" + v + "'");
}

std::vector<std::string> IniDocument::get_list(const std::string& s, const std::string& key) const {
  std::vector<std::string> out;
  if (!has(s, key)) return out;
  std::stringstream ss(entry(s, key).value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<long> IniDocument::get_long_list(const std::string& s, const std::string& key) const {
  std::vector<long> out;
  for (const auto& item : get_list(s, key)) {
    long x = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (ec != std::errc() || p != item.data() + item.size()) fail(s, key, "expected integers, got '" + item + "'");
    out.push_back(x);
  }
  return out;
}

void IniDocument::require_known(const std::string& s, const std::vector<std::string>& known) const {
  auto it = data_.find(s);
  if (it == data_.end()) return;
  for (const auto& [k, e] : it->second)
    if (std::find(known.begin(), known.end(), k) == known.end()) fail(s, k, "unknown key");
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace invguard::harness
