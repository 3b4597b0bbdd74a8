// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"
#include "didm/util/file.hpp"

namespace didm::cli {
namespace {

crypto::HashVariant parse_hash(const std::string& s) {
  if (s == "sponge") return crypto::HashVariant::kSponge;
  if (s == "group") return crypto::HashVariant::kGroup;
  throw UsageError("--hash must be sponge or group");
}

struct SetupOpts {
  std::uint64_t seed = 0;
  std::string out;
  std::uint32_t capacity = 0;
  std::string hash = "sponge";
};

int run_setup(const SetupOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  m.default_path(o.out);
  const auto settings = load_settings(ctx.globals, m);
  const std::uint32_t capacity =
      o.capacity != 0 ? o.capacity : static_cast<std::uint32_t>(settings.scenario.arch().total_params());
  m.seed("setup", o.seed);
  m.param("capacity", std::to_string(capacity));
  m.param("hash", o.hash);

  const auto pp = protocol::didm_gen(protocol::kSecurityLevel, u64_bytes(o.seed), capacity, parse_hash(o.hash));
  write_file_atomic(o.out, pp.encode());
  m.output("pp", o.out);

  KvWriter kv;
  kv.put("pp", o.out);
  kv.put("curve", pp.curve_id);
  kv.put("capacity", static_cast<unsigned long long>(pp.capacity));
  kv.put("srs_max_degree", pp.srs.max_degree());
  kv.put("hash", o.hash);
  kv.put("pp_digest", digest_hex(pp.digest()));
  kv.put("vk_in_digest", digest_hex(protocol::key_gen(pp).pk.vk_in_digest));
  say(ctx.globals, kv.str());
  return kExitOk;
}

struct AddrOpts {
  std::string pp;
  std::uint64_t seed = 0;
  std::string out;
};

int run_addr(const AddrOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  m.default_path(o.out);
  const auto pp = load_pp(o.pp, m);
  m.seed("addr", o.seed);
  const auto keys = protocol::addr_gen(pp, u64_bytes(o.seed));
  write_file_atomic(o.out, keys.encode());
  m.output("addr", o.out);
  KvWriter kv;
  kv.put("addr", o.out);
  kv.put("irpk", to_hex(crypto::encode_g1(keys.irpk)));
  say(ctx.globals, kv.str());
  return kExitOk;
}

}  // namespace

void register_setup(CLI::App& app, Context& ctx) {
  auto setup = std::make_shared<SetupOpts>();
  auto* s = app.add_subcommand("setup", "Generate public parameters (pp file)");
  s->add_option("--seed", setup->seed, "Master seed")->required();
  s->add_option("--out", setup->out, "Output pp file")->required();
  s->add_option("--capacity", setup->capacity, "Largest checkpoint length (default: scenario parameter count)");
  s->add_option("--hash", setup->hash, "Hash variant: sponge or group")->check(CLI::IsMember({"sponge", "group"}));
  s->callback([setup, &ctx] { ctx.run = [setup, &ctx] { return run_setup(*setup, ctx); }; });

  auto addr = std::make_shared<AddrOpts>();
  auto* a = app.add_subcommand("addr", "Generate an owner's address keys (secret; keep the file private)");
  a->add_option("--pp", addr->pp, "pp file")->required()->check(CLI::ExistingFile);
  a->add_option("--seed", addr->seed, "Address seed")->required();
  a->add_option("--out", addr->out, "Output key file")->required();
  a->callback([addr, &ctx] { ctx.run = [addr, &ctx] { return run_addr(*addr, ctx); }; });
}

}  // namespace didm::cli
