// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/protocol/protocol.hpp"

#include <algorithm>

#include "didm/crypto/codec.hpp"
#include "didm/crypto/prng.hpp"
#include "didm/pcs/kzg.hpp"
#include "didm/util/file.hpp"

namespace didm::protocol {

using crypto::crh_val;
using crypto::digest_bytes;
using crypto::read_g1;
using crypto::read_scalar;
using crypto::write_g1;
using crypto::write_scalar;

namespace {

Digest crh_bytes(const crypto::HashParams& hp, std::string_view ctx, std::span<const std::uint8_t> b) {
  return crh_val(hp, ctx, b);
}

void write_cps(ByteWriter& w, std::span<const Commitment> cps) {
  w.u32(static_cast<std::uint32_t>(cps.size()));
  for (const auto& c : cps) write_g1(w, c);
}

std::vector<Commitment> read_cps(ByteReader& r) {
  const std::uint32_t n = r.u32();
  if (n > r.remaining() / (4 + crypto::kG1CompressedSize)) throw DecodeError("commitment count exceeds input");
  std::vector<Commitment> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(read_g1(r));
  return out;
}

void write_ids(ByteWriter& w, const PredicateIds& ids) {
  for (const auto& d : ids) write_scalar(w, d);
}

PredicateIds read_ids(ByteReader& r) {
  PredicateIds ids;
  for (auto& d : ids) d = read_scalar(r);
  return ids;
}

std::vector<Fr> quantized(const checkpoint::WeightCheckpoint& w, int scale_bits) {
  return checkpoint::quantize(checkpoint::flatten(w), scale_bits).values;
}

Bytes inner_transcript(const Digest& vk_in_digest, const InnerStatement& s, std::span<const G1> kzg_commitments,
                       const Digest& report_digest) {
  ByteWriter w;
  write_scalar(w, vk_in_digest);
  write_cps(w, s.cps);
  write_ids(w, s.predicate_ids);
  w.u32(static_cast<std::uint32_t>(s.scale_bits));
  write_cps(w, kzg_commitments);
  write_scalar(w, report_digest);
  return std::move(w).take();
}

Bytes rho_transcript(const Bytes& t, const Fr& z, std::span<const pcs::OpeningInstance> instances) {
  ByteWriter w;
  w.raw(t);
  write_scalar(w, z);
  for (const auto& q : instances) {
    write_scalar(w, q.value);
    write_g1(w, q.proof);
  }
  return std::move(w).take();
}

}  // namespace

// ---------------------------------------------------------------- params

PublicParams didm_gen(std::uint32_t lambda, std::span<const std::uint8_t> master_seed, std::uint32_t capacity,
                      crypto::HashVariant variant) {
  if (lambda != kSecurityLevel) throw ProtocolError("only lambda = 128 is supported");
  if (capacity == 0) throw ProtocolError("capacity must be positive");
  PublicParams pp;
  pp.lambda = lambda;
  pp.curve_id = crypto::kCurveId;
  pp.master_seed.assign(master_seed.begin(), master_seed.end());
  pp.capacity = capacity;
  pp.hash = crypto::HashParams::generate(crypto::derive_seed(master_seed, "pp_H"), variant);
  pp.commit = crypto::CommitParams::generate(crypto::derive_seed(master_seed, "pp_C"),
                                             capacity + PublicParams::kExtraGenerators);
  pp.zk_seed = crypto::derive_seed(master_seed, "pp_ZK");
  pp.srs = pcs::pc_setup(capacity, crypto::derive_seed(master_seed, "pp_ACS"));
  return pp;
}

Bytes PublicParams::encode() const {
  ByteWriter body;
  body.u16(version);
  body.u32(lambda);
  body.str(curve_id);
  body.prefixed(master_seed);
  body.u32(capacity);
  body.u8(static_cast<std::uint8_t>(hash.variant()));
  ByteWriter w;
  write_section(w, kTagParams, body.data());
  return std::move(w).take();
}

PublicParams PublicParams::decode(std::span<const std::uint8_t> bytes) {
  ByteReader outer(bytes);
  ByteReader r(read_section(outer, kTagParams));
  outer.expect_end();
  const std::uint16_t version = r.u16();
  if (version != kProtocolVersion) throw DecodeError("unsupported parameter version");
  const std::uint32_t lambda = r.u32();
  const std::string curve = r.str();
  if (curve != crypto::kCurveId) throw DecodeError("parameters built for curve " + curve);
  const auto seed = r.prefixed();
  const Bytes master(seed.begin(), seed.end());
  const std::uint32_t capacity = r.u32();
  const std::uint8_t variant = r.u8();
  r.expect_end();
  if (variant > static_cast<std::uint8_t>(crypto::HashVariant::kGroup)) throw DecodeError("unknown hash variant");
  return didm_gen(lambda, master, capacity, static_cast<crypto::HashVariant>(variant));
}

Digest PublicParams::digest() const { return crh_bytes(hash, "pp", encode()); }

Digest srs_digest(const crypto::HashParams& hp, const pcs::Srs& srs) {
  ByteWriter w;
  write_cps(w, srs.g1_powers);
  crypto::write_g2(w, srs.g2_gen);
  crypto::write_g2(w, srs.g2_tau);
  return crh_bytes(hp, "srs", w.data());
}

// ---------------------------------------------------------------- addresses

AddressKeys addr_gen(const PublicParams& pp, std::span<const std::uint8_t> seed) {
  crypto::SeedStream stream("A2DIDM/addr", seed);
  AddressKeys k;
  k.sk_pr = stream.next_scalar();
  k.cr_kp = stream.next_scalar();
  const std::array<Fr, 1> m{k.sk_pr};
  k.irpk = crypto::cs_commit(pp.commit, m, k.cr_kp);
  return k;
}

Bytes AddressKeys::encode() const {
  ByteWriter body;
  write_scalar(body, sk_pr);
  write_scalar(body, cr_kp);
  write_g1(body, irpk);
  ByteWriter w;
  write_section(w, kTagAddrKeys, body.data());
  return std::move(w).take();
}

AddressKeys AddressKeys::decode(std::span<const std::uint8_t> bytes) {
  ByteReader outer(bytes);
  ByteReader r(read_section(outer, kTagAddrKeys));
  outer.expect_end();
  AddressKeys k;
  k.sk_pr = read_scalar(r);
  k.cr_kp = read_scalar(r);
  k.irpk = read_g1(r);
  r.expect_end();
  return k;
}

// ---------------------------------------------------------------- keys

Bytes VerifyingKeyIn::encode() const {
  ByteWriter w;
  w.str(relation);
  write_scalar(w, srs_digest);
  write_g1(w, avk.g1);
  crypto::write_g2(w, dk.g2);
  crypto::write_g2(w, dk.g2_tau);
  w.u32(max_degree);
  w.u32(static_cast<std::uint32_t>(scale_bits));
  return std::move(w).take();
}

VerifyingKeyIn VerifyingKeyIn::decode(ByteReader& r) {
  VerifyingKeyIn vk;
  vk.relation = r.str();
  vk.srs_digest = read_scalar(r);
  vk.avk.g1 = read_g1(r);
  vk.dk.g2 = crypto::read_g2(r);
  vk.dk.g2_tau = crypto::read_g2(r);
  vk.max_degree = r.u32();
  vk.scale_bits = static_cast<std::int32_t>(r.u32());
  return vk;
}

Bytes VerifyingKeyR::encode() const {
  ByteWriter w;
  w.str(relation);
  write_g1(w, g0);
  write_g1(w, h);
  return std::move(w).take();
}

VerifyingKeyR VerifyingKeyR::decode(ByteReader& r) {
  VerifyingKeyR vk;
  vk.relation = r.str();
  vk.g0 = read_g1(r);
  vk.h = read_g1(r);
  return vk;
}

Digest vk_in_digest(const PublicParams& pp, const VerifyingKeyIn& vk_in) {
  return crh_bytes(pp.hash, "vk-in", vk_in.encode());
}

Digest vk_r_digest(const PublicParams& pp, const VerifyingKeyR& vk_r) {
  return crh_bytes(pp.hash, "vk-r", vk_r.encode());
}

ProofKeys key_gen(const PublicParams& pp) {
  const auto acs = pcs::acs_keygen(pp.srs);
  ProofKeys keys;
  auto& vk_in = keys.vk.vk_in;
  vk_in.srs_digest = srs_digest(pp.hash, pp.srs);
  vk_in.avk = acs.avk;
  vk_in.dk = acs.dk;
  vk_in.max_degree = static_cast<std::uint32_t>(pp.srs.max_degree());
  auto& vk_r = keys.vk.vk_r;
  vk_r.g0 = pp.commit.generators().at(0);
  vk_r.h = pp.commit.blinding();

  keys.pk.apk = acs.apk;
  keys.pk.vk_in_digest = vk_in_digest(pp, vk_in);
  keys.pk.vk_r_digest = vk_r_digest(pp, vk_r);
  keys.pk.scale_bits = vk_in.scale_bits;
  return keys;
}

// ---------------------------------------------------------------- records

PredicateIds predicate_ids(const PublicParams& pp, const predicates::PredicateConfig& cfg) {
  using predicates::Predicate;
  PredicateIds ids;
  const std::array<Predicate, 3> ps{Predicate::kCwcd, Predicate::kIwfw, Predicate::kMwcd};
  for (std::size_t i = 0; i < ps.size(); ++i) ids[i] = crh_bytes(pp.hash, "pred", cfg.descriptor(ps[i]));
  return ids;
}

std::vector<Fr> ir_message(const PublicParams& pp, const Commitment& irpk, const checkpoint::WeightCheckpoint& w,
                           const PredicateIds& ids, int scale_bits) {
  std::vector<Fr> m;
  m.reserve(w.total_w() + 4);
  m.push_back(crh_bytes(pp.hash, "irpk", crypto::encode_g1(irpk)));
  const auto q = quantized(w, scale_bits);
  m.insert(m.end(), q.begin(), q.end());
  m.insert(m.end(), ids.begin(), ids.end());
  return m;
}

Fr ir_randomness(const PublicParams& pp, const Fr& cr_kp, std::uint32_t index) {
  const std::array<Fr, 1> i{Fr::from_u64(index)};
  return cr_kp + crh_val(pp.hash, "cp-tweak", std::span<const Fr>(i));
}

IrBundle ir_gen(const PublicParams& pp, const Commitment& irpk, const checkpoint::CheckpointSequence& seq,
                const predicates::PredicateConfig& cfg, const Fr& cr_kp, int scale_bits) {
  seq.validate();
  if (seq.arch.total_params() > pp.capacity) {
    throw std::length_error("checkpoint length exceeds the parameter capacity");
  }
  const PredicateIds ids = predicate_ids(pp, cfg);
  const Digest acs = srs_digest(pp.hash, pp.srs);
  IrBundle out;
  out.records.resize(seq.checkpoints.size());
  out.cps.resize(seq.checkpoints.size());
  const auto n = static_cast<std::int64_t>(seq.checkpoints.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::uint32_t>(k);
    auto& ir = out.records[i];
    ir.index = i;
    ir.irpk = irpk;
    ir.w = seq.checkpoints[i];
    ir.predicate_ids = ids;
    ir.cr_kp = cr_kp;
    ir.scale_bits = scale_bits;
    ir.acs_params = acs;
    ir.cp = crypto::cs_commit(pp.commit, ir_message(pp, irpk, ir.w, ids, scale_bits), ir_randomness(pp, cr_kp, i));
    out.cps[i] = ir.cp;
  }
  return out;
}

Bytes encode_records(const checkpoint::Architecture& arch, const std::vector<IdentityRecord>& records) {
  checkpoint::CheckpointSequence seq{arch, {}};
  for (const auto& ir : records) seq.checkpoints.push_back(ir.w);
  ByteWriter body;
  body.prefixed(checkpoint::encode_sequence(seq));
  body.u32(static_cast<std::uint32_t>(records.size()));
  for (const auto& ir : records) {
    body.u32(ir.index);
    write_g1(body, ir.cp);
    write_g1(body, ir.irpk);
    write_ids(body, ir.predicate_ids);
    write_scalar(body, ir.cr_kp);
    body.u32(static_cast<std::uint32_t>(ir.scale_bits));
    write_scalar(body, ir.acs_params);
  }
  ByteWriter w;
  write_section(w, kTagIrRecord, body.data());
  return std::move(w).take();
}

std::pair<checkpoint::Architecture, std::vector<IdentityRecord>> decode_records(std::span<const std::uint8_t> bytes) {
  ByteReader outer(bytes);
  ByteReader r(read_section(outer, kTagIrRecord));
  outer.expect_end();
  auto seq = checkpoint::decode_sequence(r.prefixed());
  const std::uint32_t n = r.u32();
  if (n != seq.checkpoints.size()) throw DecodeError("record count does not match checkpoint count");
  std::vector<IdentityRecord> records(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto& ir = records[i];
    ir.index = r.u32();
    ir.cp = read_g1(r);
    ir.irpk = read_g1(r);
    ir.predicate_ids = read_ids(r);
    ir.cr_kp = read_scalar(r);
    ir.scale_bits = static_cast<std::int32_t>(r.u32());
    ir.acs_params = read_scalar(r);
    ir.w = std::move(seq.checkpoints[i]);
  }
  r.expect_end();
  return {std::move(seq.arch), std::move(records)};
}

// ---------------------------------------------------------------- inner

Bytes InnerProof::encode() const {
  ByteWriter body;
  body.u32(static_cast<std::uint32_t>(instances.size()));
  for (const auto& q : instances) q.encode(body);
  write_scalar(body, z);
  write_scalar(body, rho);
  write_scalar(body, report_digest);
  batched.encode(body);
  ByteWriter w;
  write_section(w, kTagInnerProof, body.data());
  return std::move(w).take();
}

InnerProof InnerProof::decode(std::span<const std::uint8_t> bytes) {
  ByteReader outer(bytes);
  ByteReader r(read_section(outer, kTagInnerProof));
  outer.expect_end();
  InnerProof pi;
  const std::uint32_t n = r.u32();
  if (n > r.remaining()) throw DecodeError("instance count exceeds input");
  pi.instances.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) pi.instances.push_back(pcs::OpeningInstance::decode(r));
  pi.z = read_scalar(r);
  pi.rho = read_scalar(r);
  pi.report_digest = read_scalar(r);
  pi.batched = pcs::OpeningInstance::decode(r);
  r.expect_end();
  return pi;
}

InnerResult inner_prove(const PublicParams& pp, const ProvingKey& pk, const InnerStatement& s,
                        const InnerWitness& j) {
  const auto& seq = j.seq;
  seq.validate();
  if (s.cps.size() != seq.checkpoints.size()) {
    throw WitnessError("statement has " + std::to_string(s.cps.size()) + " commitments for " +
                       std::to_string(seq.checkpoints.size()) + " checkpoints");
  }
  if (s.predicate_ids != predicate_ids(pp, j.cfg)) throw WitnessError("predicate ids do not match the configuration");

  const std::size_t n = seq.checkpoints.size();
  std::vector<std::vector<Fr>> polys(n);
  std::vector<char> opened(n, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
    const auto i = static_cast<std::size_t>(k);
    const auto m = ir_message(pp, j.irpk, seq.checkpoints[i], s.predicate_ids, s.scale_bits);
    opened[i] = crypto::cs_open(pp.commit, s.cps[i], m, ir_randomness(pp, j.cr_kp, static_cast<std::uint32_t>(i)));
    polys[i].assign(m.begin() + 1, m.end() - 3);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!opened[i]) throw WitnessError("CP_" + std::to_string(i) + " does not open to the witness");
  }

  InnerResult out;
  out.report = predicates::evaluate(seq, j.cfg, j.predicate_seed);
  if (!out.report.all_pass) throw PredicateFailure(out.report.first_failure(), out.report);
  out.proof.report_digest = crh_bytes(pp.hash, "report", out.report.encode());

  const auto& srs = pk.apk.srs;
  std::vector<G1> kzg(n);
  for (std::size_t i = 0; i < n; ++i) kzg[i] = pcs::pc_commit(srs, polys[i]);

  const Bytes t = inner_transcript(pk.vk_in_digest, s, kzg, out.proof.report_digest);
  const Fr z = pcs::derive_rho(pp.hash, "inner-z", t);
  auto& inst = out.proof.instances;
  inst.resize(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
    const auto i = static_cast<std::size_t>(k);
    const auto o = pcs::pc_open(srs, polys[i], z);
    inst[i] = {kzg[i], z, o.value, o.proof, static_cast<std::uint32_t>(polys[i].size() - 1)};
  }
  out.proof.z = z;
  out.proof.rho = pcs::derive_rho(pp.hash, "in-rho", rho_transcript(t, z, inst));
  out.proof.batched = pcs::batch(inst, out.proof.rho);
  return out;
}

bool inner_consistent(const PublicParams& pp, const Digest& vk_in_digest, const InnerStatement& s,
                      const InnerProof& pi) {
  if (pi.instances.size() != s.cps.size() || pi.instances.empty()) return false;
  std::vector<G1> kzg;
  kzg.reserve(pi.instances.size());
  for (const auto& q : pi.instances) {
    if (!(q.point == pi.z) || q.degree_bound > pp.srs.max_degree()) return false;
    kzg.push_back(q.commitment);
  }
  const Bytes t = inner_transcript(vk_in_digest, s, kzg, pi.report_digest);
  if (!(pcs::derive_rho(pp.hash, "inner-z", t) == pi.z)) return false;
  if (!(pcs::derive_rho(pp.hash, "in-rho", rho_transcript(t, pi.z, pi.instances)) == pi.rho)) return false;
  return pcs::batch(pi.instances, pi.rho) == pi.batched;
}

// ---------------------------------------------------------------- outer

namespace {

Bytes acs_binding(const pcs::AccumulatorValue& accu, const pcs::AccumulatorProof& pi_acs) {
  ByteWriter w;
  w.raw(accu.encode());
  pi_acs.encode(w);
  return std::move(w).take();
}

Fr schnorr_challenge(const NizkContext& ctx, const OuterStatement& s, const G1& t1, const G1& t2) {
  ByteWriter w;
  w.prefixed(ctx.pp.zk_seed);
  write_scalar(w, ctx.vk_r_digest);
  write_scalar(w, ctx.vk_in_digest);
  write_g1(w, s.pcp);
  write_g1(w, s.irpk);
  write_cps(w, s.cps);
  w.prefixed(ctx.binding);
  write_g1(w, t1);
  write_g1(w, t2);
  return crh_bytes(ctx.pp.hash, "nizk-chal", w.data());
}

}  // namespace

OuterProof SchnorrBackend::prove(const NizkContext& ctx, const OuterStatement& s, const OuterWitness& w) const {
  const G1& g0 = ctx.vk_r.g0;
  const G1& h = ctx.vk_r.h;
  // Nonces from the witness and everything the challenge will cover except T1, T2.
  ByteWriter seed;
  write_scalar(seed, w.sk_pr);
  write_scalar(seed, w.cr_kp);
  write_g1(seed, s.pcp);
  write_cps(seed, s.cps);
  seed.prefixed(ctx.binding);
  crypto::SeedStream nonces("A2DIDM/nizk-nonce", seed.data());
  const Fr k1 = nonces.next_scalar();
  const Fr k2 = nonces.next_scalar();

  const G1 t1 = g0 * k1 + h * k2;
  const G1 t2 = h * k2;
  const Fr c = schnorr_challenge(ctx, s, t1, t2);
  const Fr s1 = k1 + c * w.sk_pr;
  const Fr s2 = k2 + c * w.cr_kp;

  OuterProof p;
  const auto e1 = crypto::encode_g1(t1);
  const auto e2 = crypto::encode_g1(t2);
  const auto b1 = s1.to_bytes_le();
  const auto b2 = s2.to_bytes_le();
  p.data.reserve(kProofSize);
  p.data.insert(p.data.end(), e1.begin(), e1.end());
  p.data.insert(p.data.end(), e2.begin(), e2.end());
  p.data.insert(p.data.end(), b1.begin(), b1.end());
  p.data.insert(p.data.end(), b2.begin(), b2.end());
  return p;
}

bool SchnorrBackend::verify(const NizkContext& ctx, const OuterStatement& s, const OuterProof& p) const {
  if (p.data.size() != kProofSize) throw ProtocolError("outer proof has the wrong length");
  const std::span<const std::uint8_t> d(p.data);
  constexpr std::size_t kG = crypto::kG1CompressedSize;
  G1 t1;
  G1 t2;
  try {
    t1 = crypto::decode_g1(d.subspan(0, kG));
    t2 = crypto::decode_g1(d.subspan(kG, kG));
  } catch (const crypto::EncodingError&) {
    return false;
  }
  const auto s1 = Fr::from_bytes_le(d.subspan(2 * kG, 32));
  const auto s2 = Fr::from_bytes_le(d.subspan(2 * kG + 32, 32));
  if (!s1 || !s2) return false;

  const G1& g0 = ctx.vk_r.g0;
  const G1& h = ctx.vk_r.h;
  const Fr c = schnorr_challenge(ctx, s, t1, t2);
  if (!(g0 * *s1 + h * *s2 == t1 + s.irpk * c)) return false;
  return h * *s2 == t2 + (s.pcp - g0 * ctx.vk_in_digest) * c;
}

const NizkBackend& default_backend() {
  static const SchnorrBackend backend;
  return backend;
}

OuterResult outer_prove(const PublicParams& pp, const ProvingKey& pk, const VerifyingKey& vk,
                        const InnerStatement& s_inp, const OuterWitness& j_out, const Commitment& irpk,
                        const InnerProof& pi_in, const NizkBackend& backend) {
  if (!(j_out.vk_in_digest == pk.vk_in_digest)) throw ProtocolError("witness digest does not match vk_in");
  if (!inner_consistent(pp, pk.vk_in_digest, s_inp, pi_in)) throw AccumulationError("inner proof does not match the statement");

  OuterResult out;
  auto [accu, pi_acs] = pcs::acs_prove(pp.hash, pk.apk, pi_in.instances, pk.vk_in_digest, std::nullopt, &out.ops);
  if (!pcs::acs_verify(pp.hash, vk.vk_in.avk, pk.vk_in_digest, pi_in.instances, std::nullopt, accu, pi_acs,
                       &out.ops)) {
    throw AccumulationError("acs_verify rejected the accumulation");
  }
  out.accu = accu;
  out.pi_acs = pi_acs;

  const std::array<Fr, 1> m{j_out.vk_in_digest};
  out.pcp = crypto::cs_commit(pp.commit, m, j_out.cr_kp);

  const OuterStatement s{out.pcp, irpk, s_inp.cps};
  const NizkContext ctx{pp, vk.vk_r, pk.vk_r_digest, pk.vk_in_digest, acs_binding(accu, pi_acs)};
  out.pi_out = backend.prove(ctx, s, j_out);
  return out;
}

bool verify(const PublicParams& pp, const VerifyingKey& vk, const OuterStatement& s, const OuterProof& pi_out,
            const pcs::AccumulatorValue& accu, const pcs::AccumulatorProof& pi_acs, OpCounters* ops,
            const NizkBackend& backend) {
  if (s.cps.empty()) throw ProtocolError("statement carries no commitments");
  const Digest h_in = vk_in_digest(pp, vk.vk_in);
  const NizkContext ctx{pp, vk.vk_r, vk_r_digest(pp, vk.vk_r), h_in, acs_binding(accu, pi_acs)};
  if (!backend.verify(ctx, s, pi_out)) return false;

  // A fresh accumulator must equal the deferred operands of the batched instance.
  if (!(pi_acs.rho_hat == Fr::one())) return false;
  if (pi_acs.batched.degree_bound > vk.vk_in.max_degree) return false;
  const auto [lhs, rhs] = pcs::pairing_operands(pi_acs.batched, vk.vk_in.avk.g1, ops);
  if (!(accu == pcs::AccumulatorValue{lhs, rhs})) return false;

  return pcs::acs_decide(vk.vk_in.dk, accu, ops);
}

Bytes OuterBundle::encode() const {
  ByteWriter body;
  write_g1(body, statement.pcp);
  write_g1(body, statement.irpk);
  write_cps(body, statement.cps);
  body.prefixed(pi_out.data);
  body.raw(accu.encode());
  pi_acs.encode(body);
  ByteWriter w;
  write_section(w, kTagOuterProof, body.data());
  return std::move(w).take();
}

OuterBundle OuterBundle::decode(std::span<const std::uint8_t> bytes) {
  ByteReader outer(bytes);
  ByteReader r(read_section(outer, kTagOuterProof));
  outer.expect_end();
  OuterBundle b;
  b.statement.pcp = read_g1(r);
  b.statement.irpk = read_g1(r);
  b.statement.cps = read_cps(r);
  const auto p = r.prefixed();
  b.pi_out.data.assign(p.begin(), p.end());
  b.accu = pcs::AccumulatorValue::decode(r.take(pcs::AccumulatorValue::kEncodedSize));
  b.pi_acs = pcs::AccumulatorProof::decode(r);
  r.expect_end();
  return b;
}

}  // namespace didm::protocol
