// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/pcs/accumulator.hpp"

#include <stdexcept>

#include "didm/crypto/codec.hpp"

namespace didm::pcs {
namespace {

G1 smul(const G1& p, const Fr& s, OpCounters* ops) {
  if (ops != nullptr) ++ops->g1_scalar_muls;
  return p * s;
}

G1 gadd(const G1& a, const G1& b, OpCounters* ops) {
  if (ops != nullptr) ++ops->g1_additions;
  return a + b;
}

Bytes transcript_bytes(const Digest& vk_in_digest, std::span<const OpeningInstance> q_in,
                       const std::optional<AccumulatorValue>& accu_in) {
  ByteWriter w;
  w.raw(crypto::digest_bytes(vk_in_digest));
  w.u8(accu_in ? 1 : 0);
  if (accu_in) w.raw(accu_in->encode());
  w.u32(static_cast<std::uint32_t>(q_in.size()));
  for (const auto& q : q_in) q.encode(w);
  return std::move(w).take();
}

struct Challenges {
  Fr rho;
  Fr rho_hat;
  Digest transcript;
};

Challenges challenges(const HashParams& hp, const Digest& vk_in_digest, std::span<const OpeningInstance> q_in,
                      const std::optional<AccumulatorValue>& accu_in) {
  const Bytes t = transcript_bytes(vk_in_digest, q_in, accu_in);
  Challenges c;
  c.transcript = crypto::crh_val(hp, "acs-tr", std::span<const std::uint8_t>(t));
  c.rho = derive_rho(hp, "acs-rho", t);
  if (accu_in) {
    ByteWriter w;
    w.raw(t);
    crypto::write_scalar(w, c.rho);
    c.rho_hat = derive_rho(hp, "acs-fold", w.data());
  } else {
    c.rho_hat = Fr::one();
  }
  return c;
}

AccumulatorValue fold(const std::optional<AccumulatorValue>& accu_in, const OpeningInstance& batched,
                      const Fr& rho_hat, const G1& g1, OpCounters* ops) {
  auto [l, r] = pairing_operands(batched, g1, ops);
  if (!accu_in) return {l, r};
  return {gadd(accu_in->lhs, smul(l, rho_hat, ops), ops), gadd(accu_in->rhs, smul(r, rho_hat, ops), ops)};
}

}  // namespace

std::array<std::uint8_t, AccumulatorValue::kEncodedSize> AccumulatorValue::encode() const {
  std::array<std::uint8_t, kEncodedSize> out{};
  const auto a = crypto::encode_g1(lhs);
  const auto b = crypto::encode_g1(rhs);
  std::copy(a.begin(), a.end(), out.begin());
  std::copy(b.begin(), b.end(), out.begin() + crypto::kG1CompressedSize);
  return out;
}

AccumulatorValue AccumulatorValue::decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kEncodedSize) throw crypto::EncodingError("accumulator must be two compressed G1 points");
  return {crypto::decode_g1(bytes.first(crypto::kG1CompressedSize)),
          crypto::decode_g1(bytes.subspan(crypto::kG1CompressedSize))};
}

void AccumulatorProof::encode(ByteWriter& w) const {
  crypto::write_scalar(w, rho);
  crypto::write_scalar(w, rho_hat);
  crypto::write_scalar(w, transcript);
  batched.encode(w);
}

AccumulatorProof AccumulatorProof::decode(ByteReader& r) {
  AccumulatorProof p;
  p.rho = crypto::read_scalar(r);
  p.rho_hat = crypto::read_scalar(r);
  p.transcript = crypto::read_scalar(r);
  p.batched = OpeningInstance::decode(r);
  return p;
}

AcsKeys acs_keygen(const Srs& srs) {
  return {AcsProverKey{srs}, AcsVerifierKey{srs.g1_powers.at(0)}, AcsDeciderKey{srs.g2_gen, srs.g2_tau}};
}

Fr derive_rho(const HashParams& hp, std::string_view context, std::span<const std::uint8_t> transcript) {
  if (transcript.empty()) throw std::invalid_argument("empty transcript");
  for (std::uint64_t ctr = 0;; ++ctr) {
    ByteWriter w;
    w.raw(transcript);
    w.u64(ctr);
    const Fr rho = crypto::crh_val(hp, context, std::span<const std::uint8_t>(w.data()));
    if (!rho.is_zero()) return rho;
  }
}

OpeningInstance batch(std::span<const OpeningInstance> instances, const Fr& rho, OpCounters* ops) {
  if (instances.empty()) throw std::invalid_argument("batch needs at least one instance");
  OpeningInstance out = instances[0];
  Fr pw = Fr::one();
  for (std::size_t i = 1; i < instances.size(); ++i) {
    const auto& q = instances[i];
    if (!(q.point == out.point)) throw std::invalid_argument("batched instances must share an evaluation point");
    pw *= rho;
    out.commitment = gadd(out.commitment, smul(q.commitment, pw, ops), ops);
    out.proof = gadd(out.proof, smul(q.proof, pw, ops), ops);
    out.value += pw * q.value;
    out.degree_bound = std::max(out.degree_bound, q.degree_bound);
  }
  return out;
}

std::pair<G1, G1> pairing_operands(const OpeningInstance& q, const G1& g1, OpCounters* ops) {
  const G1 lhs = gadd(gadd(q.commitment, -smul(g1, q.value, ops), ops), smul(q.proof, q.point, ops), ops);
  return {lhs, q.proof};
}

std::pair<AccumulatorValue, AccumulatorProof> acs_prove(const HashParams& hp, const AcsProverKey& apk,
                                                        std::span<const OpeningInstance> q_in,
                                                        const Digest& vk_in_digest,
                                                        const std::optional<AccumulatorValue>& accu_in,
                                                        OpCounters* ops) {
  for (const auto& q : q_in) {
    if (q.degree_bound > apk.srs.max_degree()) throw std::invalid_argument("instance degree bound exceeds SRS");
  }
  const Challenges c = challenges(hp, vk_in_digest, q_in, accu_in);
  const OpeningInstance b = batch(q_in, c.rho, ops);
  const AccumulatorValue out = fold(accu_in, b, c.rho_hat, apk.srs.g1_powers[0], ops);
  return {out, AccumulatorProof{c.rho, c.rho_hat, c.transcript, b}};
}

bool acs_verify(const HashParams& hp, const AcsVerifierKey& avk, const Digest& vk_in_digest,
                std::span<const OpeningInstance> q_in, const std::optional<AccumulatorValue>& accu_in,
                const AccumulatorValue& accu_out, const AccumulatorProof& pi, OpCounters* ops) {
  if (q_in.empty()) return false;
  for (const auto& q : q_in) {
    if (!(q.point == q_in[0].point)) return false;
  }
  const Challenges c = challenges(hp, vk_in_digest, q_in, accu_in);
  if (!(c.rho == pi.rho) || !(c.rho_hat == pi.rho_hat) || !(c.transcript == pi.transcript)) return false;
  const OpeningInstance b = batch(q_in, c.rho, ops);
  if (!(b == pi.batched)) return false;
  return fold(accu_in, b, c.rho_hat, avk.g1, ops) == accu_out;
}

bool acs_decide(const AcsDeciderKey& dk, const AccumulatorValue& accu, OpCounters* ops) {
  const std::array<std::pair<G1, G2>, 2> terms{{{accu.lhs, dk.g2}, {-accu.rhs, dk.g2_tau}}};
  return crypto::pairing_product_is_one(terms, ops);
}

}  // namespace didm::pcs
