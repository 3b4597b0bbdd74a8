#pragma once

#include "didm/forge/forge.hpp"
#include "didm/protocol/protocol.hpp"

namespace didm::testing {

using namespace didm::protocol;
using didm::checkpoint::CheckpointSequence;

struct Fixture {
  forge::ToyScenario scenario;
  PublicParams pp;
  ProofKeys keys;
  AddressKeys addr;
  predicates::PredicateConfig cfg = predicates::PredicateConfig::defaults();
  CheckpointSequence seq;

  Fixture() {
    pp = didm_gen(128, to_bytes("protocol-test"), static_cast<std::uint32_t>(scenario.arch().total_params()));
    keys = key_gen(pp);
    addr = addr_gen(pp, to_bytes("owner"));
    seq = scenario.clean(11);
  }

  InnerStatement statement(const std::vector<Commitment>& cps) const {
    return {cps, predicate_ids(pp, cfg), checkpoint::kDefaultScaleBits};
  }
  InnerWitness witness(const CheckpointSequence& s) const { return {addr.irpk, s, cfg, addr.cr_kp, 99}; }
  OuterWitness j_out() const { return {keys.pk.vk_in_digest, addr.sk_pr, addr.cr_kp}; }
};

inline const Fixture& fx() {
  static const Fixture f;
  return f;
}

struct Run {
  InnerStatement s;
  InnerResult inner;
  OuterResult outer;
  OuterBundle bundle;
};

inline Run honest_run(const CheckpointSequence& seq) {
  const auto& f = fx();
  Run r;
  const auto ir = ir_gen(f.pp, f.addr.irpk, seq, f.cfg, f.addr.cr_kp);
  r.s = f.statement(ir.cps);
  r.inner = inner_prove(f.pp, f.keys.pk, r.s, f.witness(seq));
  r.outer = outer_prove(f.pp, f.keys.pk, f.keys.vk, r.s, f.j_out(), f.addr.irpk, r.inner.proof);
  r.bundle = {{r.outer.pcp, f.addr.irpk, r.s.cps}, r.outer.pi_out, r.outer.accu, r.outer.pi_acs};
  return r;
}

inline bool verify_bundle(const OuterBundle& b, crypto::OpCounters* ops = nullptr) {
  const auto& f = fx();
  return verify(f.pp, f.keys.vk, b.statement, b.pi_out, b.accu, b.pi_acs, ops);
}

}  // namespace didm::testing
