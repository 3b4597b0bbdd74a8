// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstring>

#include "commands.hpp"
#include "didm/crypto/codec.hpp"
#include "didm/ledger/ledger.hpp"
#include "didm/pcs/accumulator.hpp"
#include "didm/util/file.hpp"

namespace didm::cli {
namespace {

std::string g1_hex(const crypto::G1& p) { return to_hex(crypto::encode_g1(p)); }

std::string arch_shape(const checkpoint::Architecture& arch) {
  std::string s;
  for (const auto& l : arch.layers) {
    if (!s.empty()) s += ' ';
    s += std::to_string(l.rows) + "x" + std::to_string(l.cols) + "+" + std::to_string(l.bias_len);
  }
  return s;
}

void put_instance(KvWriter& kv, const std::string& key, const pcs::OpeningInstance& q) {
  kv.put(key + ".commitment", g1_hex(q.commitment));
  kv.put(key + ".point", digest_hex(q.point));
  kv.put(key + ".value", digest_hex(q.value));
  kv.put(key + ".degree_bound", static_cast<unsigned long long>(q.degree_bound));
}

void inspect_sequence(KvWriter& kv, const Bytes& bytes) {
  const auto seq = checkpoint::decode_sequence(bytes);
  kv.put("type", "checkpoint-sequence");
  kv.put("layers", seq.arch.layers.size());
  kv.put("shape", arch_shape(seq.arch));
  kv.put("parameters", seq.arch.total_params());
  kv.put("checkpoints", seq.checkpoints.size());
  kv.put("weights", "withheld");
}

void inspect_pp(KvWriter& kv, const Bytes& bytes) {
  const auto pp = protocol::PublicParams::decode(bytes);
  kv.put("type", "public-parameters");
  kv.put("lambda", static_cast<unsigned long long>(pp.lambda));
  kv.put("version", static_cast<unsigned long long>(pp.version));
  kv.put("curve", pp.curve_id);
  kv.put("master_seed", to_hex(pp.master_seed));
  kv.put("capacity", static_cast<unsigned long long>(pp.capacity));
  kv.put("hash", pp.hash.variant() == crypto::HashVariant::kSponge ? "sponge" : "group");
  kv.put("commit_generators", pp.commit.capacity());
  kv.put("srs_max_degree", pp.srs.max_degree());
  kv.put("digest", digest_hex(pp.digest()));
}

void inspect_addr(KvWriter& kv, const Bytes& bytes) {
  const auto k = protocol::AddressKeys::decode(bytes);
  kv.put("type", "address-keys");
  kv.put("irpk", g1_hex(k.irpk));
  kv.put("sk_pr", "withheld");
  kv.put("cr_kp", "withheld");
}

void inspect_records(KvWriter& kv, const Bytes& bytes) {
  const auto [arch, records] = protocol::decode_records(bytes);
  kv.put("type", "identity-records");
  kv.put("shape", arch_shape(arch));
  kv.put("records", records.size());
  for (const auto& r : records) {
    const std::string key = "ir" + std::to_string(r.index);
    kv.put(key + ".cp", g1_hex(r.cp));
    kv.put(key + ".scale_bits", r.scale_bits);
  }
  if (!records.empty()) kv.put("irpk", g1_hex(records.front().irpk));
  kv.put("weights", "withheld");
  kv.put("cr_kp", "withheld");
}

void inspect_inner(KvWriter& kv, const Bytes& bytes) {
  const auto pi = protocol::InnerProof::decode(bytes);
  kv.put("type", "inner-proof");
  kv.put("instances", pi.instances.size());
  kv.put("z", digest_hex(pi.z));
  kv.put("rho", digest_hex(pi.rho));
  kv.put("report_digest", digest_hex(pi.report_digest));
  put_instance(kv, "batched", pi.batched);
}

void inspect_bundle(KvWriter& kv, const Bytes& bytes) {
  const auto b = protocol::OuterBundle::decode(bytes);
  kv.put("type", "outer-bundle");
  kv.put("cps", b.statement.cps.size());
  kv.put("pcp", g1_hex(b.statement.pcp));
  kv.put("irpk", g1_hex(b.statement.irpk));
  kv.put("pi_out_bytes", b.pi_out.data.size());
  kv.put("accu.lhs", g1_hex(b.accu.lhs));
  kv.put("accu.rhs", g1_hex(b.accu.rhs));
  put_instance(kv, "pi_acs.batched", b.pi_acs.batched);
}

void inspect_tx(KvWriter& kv, const Bytes& bytes) {
  const auto tx = ledger::Transaction::decode(bytes);
  kv.put("type", "transaction");
  kv.put("bytes", bytes.size());
  kv.put("ledger_digest", digest_hex(tx.ledger_digest));
  kv.put("cps", tx.cp_list.size());
  for (std::size_t i = 0; i < tx.cp_list.size(); ++i) kv.put("cp" + std::to_string(i), g1_hex(tx.cp_list[i]));
  kv.put("pcp", g1_hex(tx.pcp));
  kv.put("submitter", g1_hex(tx.submitter));
  kv.put("pi_out_bytes", tx.pi_out.data.size());
  kv.put("accu.lhs", g1_hex(tx.accu.lhs));
  kv.put("accu.rhs", g1_hex(tx.accu.rhs));
  kv.put("nonce", digest_hex(tx.nonce));
}

struct InspectOpts {
  std::string file;
};

int run_inspect(const InspectOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  m.input("file", o.file);
  const Bytes bytes = read_file(o.file);
  KvWriter kv;
  kv.put("file", o.file);
  kv.put("sha256", sha256_hex(bytes));
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "DIDM", 4) == 0) {
    inspect_sequence(kv, bytes);
  } else {
    const std::string tag = bytes.size() >= kSectionTagSize ? peek_tag(bytes) : std::string();
    if (tag == protocol::kTagParams) {
      inspect_pp(kv, bytes);
    } else if (tag == protocol::kTagAddrKeys) {
      inspect_addr(kv, bytes);
    } else if (tag == protocol::kTagIrRecord) {
      inspect_records(kv, bytes);
    } else if (tag == protocol::kTagInnerProof) {
      inspect_inner(kv, bytes);
    } else if (tag == protocol::kTagOuterProof) {
      inspect_bundle(kv, bytes);
    } else if (tag == ledger::kTagTransaction) {
      inspect_tx(kv, bytes);
    } else {
      throw UsageError(o.file + ": unrecognised file type");
    }
  }
  say(ctx.globals, kv.str());
  return kExitOk;
}

struct AcsOpts {
  std::string pp;
  std::string tx;
};

int run_acs_dump(const AcsOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  const auto pp = load_pp(o.pp, m);
  const auto keys = protocol::key_gen(pp);
  m.input("tx", o.tx);
  const auto tx = ledger::Transaction::decode(read_file(o.tx));
  ByteWriter w;
  tx.pi_acs.encode(w);
  ByteWriter iw;
  tx.pi_acs.batched.encode(iw);

  crypto::OpCounters ops;
  const auto t0 = std::chrono::steady_clock::now();
  const bool decided = pcs::acs_decide(keys.vk.vk_in.dk, tx.accu, &ops);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  m.ops(ops);
  m.timing("acs_decide", secs);

  KvWriter kv;
  kv.put("accu_bytes", tx.accu.encode().size());
  kv.put("pi_acs_bytes", w.data().size());
  kv.put("instance_bytes", iw.data().size());
  kv.put("batched_degree_bound", static_cast<unsigned long long>(tx.pi_acs.batched.degree_bound));
  kv.put("cps", tx.cp_list.size());
  kv.put("decide", decided);
  kv.put("decide_ms", secs * 1e3);
  say(ctx.globals, kv.str() + ops_kv(ops, "decider."));
  return decided ? kExitOk : kExitRejected;
}

}  // namespace

void register_inspect(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<InspectOpts>();
  auto* i = app.add_subcommand("inspect", "Print the structure of any didm file; secrets are never printed");
  i->add_option("file", o->file, "File to inspect")->required()->check(CLI::ExistingFile);
  i->callback([o, &ctx] { ctx.run = [o, &ctx] { return run_inspect(*o, ctx); }; });

  auto* acs = app.add_subcommand("acs", "Accumulation-scheme utilities");
  acs->require_subcommand(1);
  auto a = std::make_shared<AcsOpts>();
  auto* d = acs->add_subcommand("dump", "Sizes and decider op counters of a transaction's accumulator");
  d->add_option("--pp", a->pp, "pp file")->required()->check(CLI::ExistingFile);
  d->add_option("tx", a->tx, "Transaction file")->required()->check(CLI::ExistingFile);
  d->callback([a, &ctx] { ctx.run = [a, &ctx] { return run_acs_dump(*a, ctx); }; });
}

}  // namespace didm::cli
