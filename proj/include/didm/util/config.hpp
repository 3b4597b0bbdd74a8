// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace didm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimal TOML subset: `[section]` headers, `key = value` lines, `#`
/// comments, optional double quotes around values. Keys before any header
/// land in section "".
class ConfigDoc {
 public:
  static ConfigDoc parse(std::string_view text);

  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  long long get_int(const std::string& section, const std::string& key, long long fallback) const;
  bool has_section(const std::string& section) const { return sections_.count(section) != 0; }
  const std::map<std::string, std::string>& section(const std::string& name) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// `name = value` lines, in insertion order.
class KvWriter {
 public:
  void put(std::string_view key, std::string_view value);
  void put(std::string_view key, const char* value) { put(key, std::string_view(value)); }
  void put(std::string_view key, double value);
  void put(std::string_view key, long long value);
  void put(std::string_view key, unsigned long long value);
  void put(std::string_view key, int value) { put(key, static_cast<long long>(value)); }
  void put(std::string_view key, std::size_t value) { put(key, static_cast<unsigned long long>(value)); }
  void put(std::string_view key, bool value) { put(key, static_cast<long long>(value ? 1 : 0)); }
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace didm
