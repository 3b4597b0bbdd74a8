// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "common.hpp"

#include <cstdio>

#include "didm/crypto/prng.hpp"
#include "didm/util/file.hpp"

namespace didm::cli {

void Manifest::set_command(std::string command, const std::vector<std::string>& argv) {
  command_ = std::move(command);
  argv_.clear();
  for (const auto& a : argv) {
    if (!argv_.empty()) argv_ += ' ';
    argv_ += a;
  }
}

void Manifest::seed(const std::string& name, std::uint64_t value) {
  entries_.emplace_back("seed." + name, std::to_string(value));
}

void Manifest::param(const std::string& name, const std::string& value) { entries_.emplace_back("param." + name, value); }

void Manifest::param(const std::string& name, double value) { param(name, format_double(value)); }

void Manifest::input(const std::string& role, const std::filesystem::path& p) {
  entries_.emplace_back("input." + role, p.string());
  entries_.emplace_back("input." + role + ".sha256", sha256_hex(read_file(p)));
}

void Manifest::output(const std::string& role, const std::filesystem::path& p) {
  entries_.emplace_back("output." + role, p.string());
  entries_.emplace_back("output." + role + ".sha256", sha256_hex(read_file(p)));
}

void Manifest::ops(const crypto::OpCounters& c) {
  entries_.emplace_back("ops.miller_loops", std::to_string(c.miller_loops));
  entries_.emplace_back("ops.final_exponentiations", std::to_string(c.final_exponentiations));
  entries_.emplace_back("ops.g1_scalar_muls", std::to_string(c.g1_scalar_muls));
  entries_.emplace_back("ops.g1_additions", std::to_string(c.g1_additions));
}

void Manifest::timing(const std::string& name, double seconds) {
  entries_.emplace_back("time." + name + "_s", format_double(seconds));
}

void Manifest::default_path(const std::filesystem::path& p) {
  if (!default_path_) default_path_ = p;
}

std::filesystem::path Manifest::path(const std::string& override_path) const {
  if (!override_path.empty()) return override_path;
  if (default_path_) return default_path_->string() + ".manifest";
  std::string name = "didm-" + command_ + ".manifest";
  for (auto& c : name) c = c == ' ' ? '-' : c;
  return name;
}

std::string Manifest::render(int exit_code, const std::string& error) const {
  KvWriter kv;
  kv.put("manifest_version", 1);
  kv.put("protocol_version", static_cast<long long>(protocol::kProtocolVersion));
  kv.put("command", command_);
  kv.put("argv", argv_);
  for (const auto& [k, v] : entries_) kv.put(k, v);
  kv.put("time.total_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count());
  kv.put("exit_code", exit_code);
  if (!error.empty()) kv.put("error", error);
  return kv.str();
}

Settings load_settings(const Globals& g, Manifest& m) {
  Settings s;
  if (g.config_path.empty()) return s;
  m.input("config", g.config_path);
  const auto doc = ConfigDoc::parse(read_text(g.config_path));

  auto& sc = s.scenario;
  sc.n = static_cast<std::size_t>(doc.get_int("scenario", "n", static_cast<long long>(sc.n)));
  sc.d = static_cast<std::size_t>(doc.get_int("scenario", "d", static_cast<long long>(sc.d)));
  sc.classes = static_cast<std::uint32_t>(doc.get_int("scenario", "classes", sc.classes));
  sc.hidden = static_cast<std::uint32_t>(doc.get_int("scenario", "hidden", sc.hidden));
  sc.data_seed = static_cast<std::uint64_t>(doc.get_int("scenario", "data_seed", static_cast<long long>(sc.data_seed)));

  auto& t = sc.train;
  t.epochs = static_cast<std::uint32_t>(doc.get_int("train", "epochs", t.epochs));
  t.learning_rate = doc.get_double("train", "learning_rate", t.learning_rate);
  t.batch_size = static_cast<std::uint32_t>(doc.get_int("train", "batch_size", t.batch_size));
  t.validate();

  auto& a = sc.attack;
  a.beta = doc.get_double("attack", "beta", a.beta);
  a.poison_rate = doc.get_double("attack", "poison_rate", a.poison_rate);
  a.mu = doc.get_double("attack", "mu", a.mu);
  a.lambda_kd = doc.get_double("attack", "lambda_kd", a.lambda_kd);
  a.lambda_ce = doc.get_double("attack", "lambda_ce", a.lambda_ce);
  a.aux_fraction = doc.get_double("attack", "aux_fraction", a.aux_fraction);
  a.labeled_fraction = doc.get_double("attack", "labeled_fraction", a.labeled_fraction);

  s.predicates = predicates::PredicateConfig::from_config(doc);
  // the trainer draws W_0 from the same distribution the CWCD references use
  sc.init = s.predicates.init_spec;
  if (sc.n == 0 || sc.d == 0 || sc.classes < 2 || sc.hidden == 0) throw ConfigError("scenario: degenerate geometry");
  return s;
}

protocol::PublicParams load_pp(const std::string& path, Manifest& m) {
  if (path.empty()) throw UsageError("--pp is required");
  m.input("pp", path);
  return protocol::PublicParams::decode(read_file(path));
}

std::string sha256_hex(std::span<const std::uint8_t> data) {
  const auto d = crypto::sha256(data);
  return to_hex(d);
}

std::string digest_hex(const crypto::Digest& d) { return to_hex(crypto::digest_bytes(d)); }

std::string ops_kv(const crypto::OpCounters& c, const std::string& prefix) {
  KvWriter kv;
  kv.put(prefix + "miller_loops", static_cast<unsigned long long>(c.miller_loops));
  kv.put(prefix + "pairing_checks", static_cast<unsigned long long>(c.pairing_checks()));
  kv.put(prefix + "g1_scalar_muls", static_cast<unsigned long long>(c.g1_scalar_muls));
  kv.put(prefix + "g1_additions", static_cast<unsigned long long>(c.g1_additions));
  return kv.str();
}

void say(const Globals& g, const std::string& text) {
  if (g.quiet) return;
  std::fputs(text.c_str(), stdout);
  if (!text.empty() && text.back() != '\n') std::fputc('\n', stdout);
}

}  // namespace didm::cli
