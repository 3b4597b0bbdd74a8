// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "didm/crypto/pairing.hpp"
#include "didm/forge/forge.hpp"
#include "didm/predicates/predicates.hpp"
#include "didm/protocol/protocol.hpp"
#include "didm/util/config.hpp"

namespace didm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitUsage = 2;

/// Bad flag values or missing inputs detected after parsing. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The reproducibility record of one invocation, written as key-value text.
class Manifest {
 public:
  void set_command(std::string command, const std::vector<std::string>& argv);
  const std::string& command() const { return command_; }

  void seed(const std::string& name, std::uint64_t value);
  void param(const std::string& name, const std::string& value);
  void param(const std::string& name, double value);
  /// Records path and SHA-256 of an existing file.
  void input(const std::string& role, const std::filesystem::path& p);
  void output(const std::string& role, const std::filesystem::path& p);
  void ops(const crypto::OpCounters& c);
  void timing(const std::string& name, double seconds);

  /// Where the manifest goes unless --manifest overrides it.
  void default_path(const std::filesystem::path& p);
  std::filesystem::path path(const std::string& override_path) const;

  std::string render(int exit_code, const std::string& error) const;

 private:
  std::string command_;
  std::string argv_;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::optional<std::filesystem::path> default_path_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Options shared by every subcommand.
struct Globals {
  std::string config_path;
  std::string manifest_path;
  bool quiet = false;
};

struct Settings {
  forge::ToyScenario scenario;
  predicates::PredicateConfig predicates = predicates::PredicateConfig::defaults();
};

/// Defaults overlaid with the [scenario], [train], [attack] and [predicates]
/// sections of the config file, if one was given.
Settings load_settings(const Globals& g, Manifest& m);

protocol::PublicParams load_pp(const std::string& path, Manifest& m);

std::string sha256_hex(std::span<const std::uint8_t> data);
std::string digest_hex(const crypto::Digest& d);
std::string ops_kv(const crypto::OpCounters& c, const std::string& prefix);

/// Prints unless --quiet.
void say(const Globals& g, const std::string& text);

}  // namespace didm::cli
