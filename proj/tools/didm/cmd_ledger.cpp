// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>

#include "commands.hpp"
#include "didm/ledger/ledger.hpp"
#include "didm/util/file.hpp"

namespace didm::cli {
namespace {

struct LedgerOpts {
  std::string pp;
  std::string journal;
  std::string tx;
  std::uint64_t height = 0;
};

ledger::Ledger open_ledger(const LedgerOpts& o, Manifest& m, bool must_exist) {
  const auto pp = load_pp(o.pp, m);
  if (std::filesystem::exists(o.journal)) {
    m.input("ledger", o.journal);
  } else if (must_exist) {
    throw UsageError("no journal at " + o.journal);
  }
  return ledger::Ledger(pp, protocol::key_gen(pp).vk, o.journal);
}

int run_submit(const LedgerOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  m.default_path(o.journal);
  m.input("tx", o.tx);
  const Bytes bytes = read_file(o.tx);
  auto led = open_ledger(o, m, false);
  KvWriter kv;
  ledger::Receipt r;
  try {
    r = led.submit(ledger::Transaction::decode(bytes));
  } catch (const DecodeError& e) {
    r.reason = ledger::RejectReason::kInvalid;
    kv.put("malformed", e.what());
  } catch (const crypto::EncodingError& e) {
    r.reason = ledger::RejectReason::kInvalid;
    kv.put("malformed", e.what());
  }
  if (std::filesystem::exists(o.journal)) m.output("ledger", o.journal);
  m.param("accepted", r.accepted ? "1" : "0");
  m.param("reason", ledger::reject_reason_name(r.reason));
  m.ops(led.stats().ops);
  kv.put("accepted", r.accepted);
  kv.put("reason", ledger::reject_reason_name(r.reason));
  kv.put("height", static_cast<unsigned long long>(r.height));
  kv.put("timestamp", static_cast<unsigned long long>(r.timestamp));
  kv.put("tx_digest", digest_hex(r.tx_digest));
  kv.put("ledger_height", static_cast<unsigned long long>(led.height()));
  kv.put("ledger_root", digest_hex(led.root()));
  say(ctx.globals, kv.str());
  return r.accepted ? kExitOk : kExitRejected;
}

int run_block_verify(const LedgerOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  const auto led = open_ledger(o, m, true);
  if (o.height == 0 || o.height > led.height()) {
    throw UsageError("height " + std::to_string(o.height) + " outside 1.." + std::to_string(led.height()));
  }
  const bool ok = led.verify_block(o.height);
  const auto& b = led.blocks()[o.height - 1];
  m.param("height", std::to_string(o.height));
  m.param("valid", ok ? "1" : "0");
  KvWriter kv;
  kv.put("height", static_cast<unsigned long long>(o.height));
  kv.put("timestamp", static_cast<unsigned long long>(b.timestamp));
  kv.put("tx_digest", digest_hex(b.tx_digest));
  kv.put("checkpoints", b.tx.cp_list.size());
  kv.put("valid", ok);
  say(ctx.globals, kv.str());
  return ok ? kExitOk : kExitRejected;
}

int run_stats(const LedgerOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  const auto led = open_ledger(o, m, true);
  const auto st = led.stats();
  m.ops(st.ops);
  KvWriter kv;
  kv.put("height", static_cast<unsigned long long>(led.height()));
  kv.put("root", digest_hex(led.root()));
  kv.put("leaves", static_cast<unsigned long long>(st.leaves));
  kv.put("replayed_from_journal", static_cast<unsigned long long>(st.submissions));
  kv.put("accepted", static_cast<unsigned long long>(st.accepted));
  kv.put("rejected_invalid", static_cast<unsigned long long>(st.rejected_invalid));
  kv.put("rejected_replay", static_cast<unsigned long long>(st.rejected_replay));
  kv.put("rejected_claimed", static_cast<unsigned long long>(st.rejected_claimed));
  kv.put("truncated_records_dropped", static_cast<unsigned long long>(st.truncated_records_dropped));
  kv.put("verify_time_ms", std::chrono::duration<double, std::milli>(st.verify_time).count());
  if (st.accepted != 0) {
    kv.put("verify_time_per_tx_ms",
           std::chrono::duration<double, std::milli>(st.verify_time).count() / static_cast<double>(st.accepted));
  }
  say(ctx.globals, kv.str() + ops_kv(st.ops, "verifier."));
  return kExitOk;
}

}  // namespace

void register_ledger(CLI::App& app, Context& ctx) {
  auto* l = app.add_subcommand("ledger", "Simulated append-only ledger backed by a journal file");
  l->require_subcommand(1);

  auto submit = std::make_shared<LedgerOpts>();
  auto* s = l->add_subcommand("submit", "Verify and append a transaction; exit 1 if rejected");
  s->add_option("--pp", submit->pp, "pp file")->required()->check(CLI::ExistingFile);
  s->add_option("--ledger", submit->journal, "Journal file (created if missing)")->required();
  s->add_option("tx", submit->tx, "Transaction file")->required()->check(CLI::ExistingFile);
  s->callback([submit, &ctx] { ctx.run = [submit, &ctx] { return run_submit(*submit, ctx); }; });

  auto verify = std::make_shared<LedgerOpts>();
  auto* v = l->add_subcommand("verify", "Re-verify the block at a height");
  v->add_option("--pp", verify->pp, "pp file")->required()->check(CLI::ExistingFile);
  v->add_option("--ledger", verify->journal, "Journal file")->required();
  v->add_option("height", verify->height, "Block height (from 1)")->required();
  v->callback([verify, &ctx] { ctx.run = [verify, &ctx] { return run_block_verify(*verify, ctx); }; });

  auto stats = std::make_shared<LedgerOpts>();
  auto* t = l->add_subcommand("stats", "Replay the journal and print counts, op counters and timing");
  t->add_option("--pp", stats->pp, "pp file")->required()->check(CLI::ExistingFile);
  t->add_option("--ledger", stats->journal, "Journal file")->required();
  t->callback([stats, &ctx] { ctx.run = [stats, &ctx] { return run_stats(*stats, ctx); }; });
}

}  // namespace didm::cli
