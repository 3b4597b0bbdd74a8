// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdio>

#include "commands.hpp"
#include "didm/ledger/ledger.hpp"
#include "didm/util/file.hpp"

namespace didm::cli {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<crypto::Digest> prior_leaves(const std::string& journal, const protocol::PublicParams& pp,
                                         const protocol::VerifyingKey& vk, Manifest& m) {
  if (journal.empty() || !std::filesystem::exists(journal)) return {};
  m.input("ledger", journal);
  return ledger::Ledger(pp, vk, journal).leaves();
}

struct ReportOpts {
  std::string seq;
  std::uint64_t seed = 0;
  std::string out;
};

int run_report(const ReportOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  m.default_path(o.out.empty() ? o.seq + ".report" : o.out);
  const auto settings = load_settings(ctx.globals, m);
  m.input("sequence", o.seq);
  m.seed("audit", o.seed);
  const auto seq = checkpoint::decode_sequence(read_file(o.seq));
  const auto report = predicates::evaluate(seq, settings.predicates, o.seed);
  if (!o.out.empty()) {
    write_text_atomic(o.out, report.to_kv());
    m.output("report", o.out);
  }
  say(ctx.globals, report.to_kv());
  m.param("all_pass", report.all_pass ? "1" : "0");
  return report.all_pass ? kExitOk : kExitRejected;
}

struct ProveOpts {
  std::string pp;
  std::string addr;
  std::string seq;
  std::uint64_t seed = 0;
  std::string out;
  std::string journal;
  std::string report_out;
  std::string ir_out;
  std::string inner_out;
  std::string bundle_out;
};

int run_prove(const ProveOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  m.default_path(o.out);
  const auto settings = load_settings(ctx.globals, m);
  const auto pp = load_pp(o.pp, m);
  const auto keys = protocol::key_gen(pp);
  m.input("addr", o.addr);
  const auto addr = protocol::AddressKeys::decode(read_file(o.addr));
  m.input("sequence", o.seq);
  const auto seq = checkpoint::decode_sequence(read_file(o.seq));
  m.seed("audit", o.seed);
  const auto prior = prior_leaves(o.journal, pp, keys.vk, m);

  const auto t0 = Clock::now();
  const auto ir = protocol::ir_gen(pp, addr.irpk, seq, settings.predicates, addr.cr_kp);
  m.timing("ir_gen", since(t0));
  if (!o.ir_out.empty()) {
    write_file_atomic(o.ir_out, protocol::encode_records(seq.arch, ir.records));
    m.output("ir_records", o.ir_out);
  }

  const protocol::InnerStatement s{ir.cps, protocol::predicate_ids(pp, settings.predicates),
                                   checkpoint::kDefaultScaleBits};
  const protocol::InnerWitness j_in{addr.irpk, seq, settings.predicates, addr.cr_kp, o.seed};
  const protocol::OuterWitness j_out{keys.pk.vk_in_digest, addr.sk_pr, addr.cr_kp};

  protocol::InnerResult inner;
  const auto t1 = Clock::now();
  try {
    inner = protocol::inner_prove(pp, keys.pk, s, j_in);
  } catch (const protocol::PredicateFailure& e) {
    if (!o.report_out.empty()) {
      write_text_atomic(o.report_out, e.report().to_kv());
      m.output("report", o.report_out);
    }
    say(ctx.globals, e.report().to_kv());
    std::fprintf(stderr, "didm audit prove: refused, predicate %s failed; no transaction written\n",
                 e.predicate().c_str());
    m.param("refused", e.predicate());
    return kExitRejected;
  } catch (const protocol::WitnessError& e) {
    std::fprintf(stderr, "didm audit prove: refused, %s\n", e.what());
    m.param("refused", "witness");
    return kExitRejected;
  }
  m.timing("inner_prove", since(t1));

  const auto t2 = Clock::now();
  const auto outer = protocol::outer_prove(pp, keys.pk, keys.vk, s, j_out, addr.irpk, inner.proof);
  m.timing("outer_prove", since(t2));
  const auto tx = ledger::build_transaction(pp, keys.vk, s.cps, outer.pcp, outer.pi_out, outer.accu, outer.pi_acs,
                                            addr.irpk, prior);
  const Bytes encoded = tx.encode();
  write_file_atomic(o.out, encoded);
  m.output("tx", o.out);
  m.ops(outer.ops);

  if (!o.report_out.empty()) {
    write_text_atomic(o.report_out, inner.report.to_kv());
    m.output("report", o.report_out);
  }
  if (!o.inner_out.empty()) {
    write_file_atomic(o.inner_out, inner.proof.encode());
    m.output("inner_proof", o.inner_out);
  }
  if (!o.bundle_out.empty()) {
    const protocol::OuterBundle b{tx.statement(), outer.pi_out, outer.accu, outer.pi_acs};
    write_file_atomic(o.bundle_out, b.encode());
    m.output("bundle", o.bundle_out);
  }

  KvWriter kv;
  kv.put("tx", o.out);
  kv.put("tx_digest", digest_hex(ledger::tx_digest(pp.hash, encoded)));
  kv.put("checkpoints", seq.checkpoints.size());
  kv.put("prior_leaves", prior.size());
  kv.put("tx_bytes", encoded.size());
  kv.put("pi_out_bytes", outer.pi_out.data.size());
  kv.put("accu_bytes", outer.accu.encode().size());
  kv.put("prove_s", since(t1));
  say(ctx.globals, kv.str() + ops_kv(outer.ops, "prover.") + inner.report.to_kv());
  return kExitOk;
}

struct VerifyOpts {
  std::string pp;
  std::string tx;
  std::string journal;
};

int run_verify(const VerifyOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  m.default_path(o.tx + ".verify");
  const auto pp = load_pp(o.pp, m);
  const auto keys = protocol::key_gen(pp);
  m.input("tx", o.tx);
  const Bytes bytes = read_file(o.tx);
  if (peek_tag(bytes) != ledger::kTagTransaction) throw UsageError(o.tx + " is not a transaction file");
  const auto prior = prior_leaves(o.journal, pp, keys.vk, m);

  KvWriter kv;
  crypto::OpCounters ops;
  bool ok = false;
  const auto t0 = Clock::now();
  try {
    ok = ledger::verify_tx(pp, keys.vk, ledger::Transaction::decode(bytes), prior, &ops);
  } catch (const DecodeError& e) {
    kv.put("malformed", e.what());
  } catch (const crypto::EncodingError& e) {
    kv.put("malformed", e.what());
  } catch (const protocol::ProtocolError& e) {
    kv.put("malformed", e.what());
  }
  const double secs = since(t0);
  m.timing("verify", secs);
  m.ops(ops);
  m.param("accepted", ok ? "1" : "0");
  kv.put("accepted", ok);
  kv.put("verify_ms", secs * 1e3);
  say(ctx.globals, kv.str() + ops_kv(ops, "verifier."));
  return ok ? kExitOk : kExitRejected;
}

}  // namespace

void register_audit(CLI::App& app, Context& ctx) {
  auto* a = app.add_subcommand("audit", "Evaluate, prove and verify a training lineage");
  a->require_subcommand(1);

  auto report = std::make_shared<ReportOpts>();
  auto* r = a->add_subcommand("report", "Evaluate the three predicates and print the report (no proof)");
  r->add_option("--seq", report->seq, "Checkpoint-sequence file")->required()->check(CLI::ExistingFile);
  r->add_option("--seed", report->seed, "Audit seed (CWCD reference draws)")->required();
  r->add_option("--out", report->out, "Write the key-value report here");
  r->callback([report, &ctx] { ctx.run = [report, &ctx] { return run_report(*report, ctx); }; });

  auto prove = std::make_shared<ProveOpts>();
  auto* p = a->add_subcommand("prove", "Commit the sequence, prove lineage and assemble a ledger transaction");
  p->add_option("--pp", prove->pp, "pp file")->required()->check(CLI::ExistingFile);
  p->add_option("--addr", prove->addr, "Owner key file from `didm addr`")->required()->check(CLI::ExistingFile);
  p->add_option("--seq", prove->seq, "Checkpoint-sequence file")->required()->check(CLI::ExistingFile);
  p->add_option("--seed", prove->seed, "Audit seed (CWCD reference draws)")->required();
  p->add_option("--out", prove->out, "Output transaction file")->required();
  p->add_option("--ledger", prove->journal, "Journal whose leaves precede this transaction");
  p->add_option("--report", prove->report_out, "Write the predicate report here");
  p->add_option("--ir-out", prove->ir_out, "Write the identity records here (contains weights)");
  p->add_option("--inner-out", prove->inner_out, "Write the inner proof here");
  p->add_option("--bundle-out", prove->bundle_out, "Write the outer proof bundle here");
  p->callback([prove, &ctx] { ctx.run = [prove, &ctx] { return run_prove(*prove, ctx); }; });

  auto verify = std::make_shared<VerifyOpts>();
  auto* v = a->add_subcommand("verify", "Verify a transaction; exit 0 accept, 1 reject");
  v->add_option("--pp", verify->pp, "pp file")->required()->check(CLI::ExistingFile);
  v->add_option("--tx,tx", verify->tx, "Transaction file")->required()->check(CLI::ExistingFile);
  v->add_option("--ledger", verify->journal, "Journal whose leaves precede the transaction");
  v->callback([verify, &ctx] { ctx.run = [verify, &ctx] { return run_verify(*verify, ctx); }; });
}

}  // namespace didm::cli
