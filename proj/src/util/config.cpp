// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/util/config.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace didm {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigDoc ConfigDoc::parse(std::string_view text) {
  ConfigDoc doc;
  std::string current;
  doc.sections_[current];
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      doc.sections_[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    doc.sections_[current][key] = std::string(value);
  }
  return doc;
}

std::optional<std::string> ConfigDoc::get(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

double ConfigDoc::get_double(const std::string& section, const std::string& key, double fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) throw ConfigError(section + "." + key + ": not a number");
  return out;
}

long long ConfigDoc::get_int(const std::string& section, const std::string& key, long long fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) throw ConfigError(section + "." + key + ": not an integer");
  return out;
}

const std::map<std::string, std::string>& ConfigDoc::section(const std::string& name) const {
  static const std::map<std::string, std::string> kEmpty;
  const auto s = sections_.find(name);
  return s == sections_.end() ? kEmpty : s->second;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void KvWriter::put(std::string_view key, std::string_view value) {
  out_.append(key);
  out_.append(" = ");
  out_.append(value);
  out_.push_back('\n');
}

void KvWriter::put(std::string_view key, double value) { put(key, std::string_view(format_double(value))); }
void KvWriter::put(std::string_view key, long long value) { put(key, std::string_view(std::to_string(value))); }
void KvWriter::put(std::string_view key, unsigned long long value) {
  put(key, std::string_view(std::to_string(value)));
}

}  // namespace didm
