// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "didm/checkpoint/checkpoint.hpp"
#include "didm/crypto/commit.hpp"
#include "didm/crypto/hash.hpp"
#include "didm/pcs/accumulator.hpp"
#include "didm/predicates/predicates.hpp"

namespace didm::protocol {

using crypto::Commitment;
using crypto::Digest;
using crypto::Fr;
using crypto::G1;
using crypto::OpCounters;

inline constexpr std::uint16_t kProtocolVersion = 1;
inline constexpr std::uint32_t kSecurityLevel = 128;

// 8-byte file section tags
inline constexpr std::string_view kTagParams{"PPARAMS\0", 8};
inline constexpr std::string_view kTagAddrKeys{"ADDRKEYS", 8};
inline constexpr std::string_view kTagIrRecord{"IRRECORD", 8};
inline constexpr std::string_view kTagInnerProof{"INNERPRF", 8};
inline constexpr std::string_view kTagOuterProof{"OUTERPRF", 8};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A commitment opening in the inner statement does not match the witness.
class WitnessError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

class PredicateFailure : public ProtocolError {
 public:
  PredicateFailure(std::string predicate, predicates::PredicateReport report)
      : ProtocolError("predicate " + predicate + " rejected the checkpoint sequence"),
        predicate_(std::move(predicate)),
        report_(std::move(report)) {}
  const std::string& predicate() const { return predicate_; }
  const predicates::PredicateReport& report() const { return report_; }

 private:
  std::string predicate_;
  predicates::PredicateReport report_;
};

/// acs_verify rejected, or the inner proof is internally inconsistent.
class AccumulationError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

/// pp. Everything is re-derived from (lambda, master_seed, capacity), so the
/// file form stores only those and the curve id.
struct PublicParams {
  std::uint32_t lambda = kSecurityLevel;
  std::uint16_t version = kProtocolVersion;
  std::string curve_id;
  Bytes master_seed;
  std::uint32_t capacity = 0;  // largest quantized checkpoint length

  crypto::HashParams hash;      // pp_H
  crypto::CommitParams commit;  // pp_C
  Bytes zk_seed;                // pp_ZK
  pcs::Srs srs;                 // pp_in / pp_ACS

  /// Generators beyond the quantized weights: irpk digest and three predicate ids.
  static constexpr std::uint32_t kExtraGenerators = 4;

  Bytes encode() const;
  static PublicParams decode(std::span<const std::uint8_t> bytes);
  Digest digest() const;
};

/// Throws ProtocolError unless lambda is 128.
PublicParams didm_gen(std::uint32_t lambda, std::span<const std::uint8_t> master_seed, std::uint32_t capacity,
                      crypto::HashVariant variant = crypto::HashVariant::kSponge);

Digest srs_digest(const crypto::HashParams& hp, const pcs::Srs& srs);

struct AddressKeys {
  Fr sk_pr;
  Fr cr_kp;
  Commitment irpk;

  Bytes encode() const;
  static AddressKeys decode(std::span<const std::uint8_t> bytes);
};

AddressKeys addr_gen(const PublicParams& pp, std::span<const std::uint8_t> seed);

struct VerifyingKeyIn {
  std::string relation = "R_in";
  Digest srs_digest;
  pcs::AcsVerifierKey avk;
  pcs::AcsDeciderKey dk;
  std::uint32_t max_degree = 0;
  std::int32_t scale_bits = checkpoint::kDefaultScaleBits;

  Bytes encode() const;
  static VerifyingKeyIn decode(ByteReader& r);
};

struct VerifyingKeyR {
  std::string relation = "R";
  G1 g0;
  G1 h;

  Bytes encode() const;
  static VerifyingKeyR decode(ByteReader& r);
};

struct VerifyingKey {
  VerifyingKeyR vk_r;
  VerifyingKeyIn vk_in;
};

struct ProvingKey {
  std::string relation_r = "R";
  std::string relation_in = "R_in";
  pcs::AcsProverKey apk;
  Digest vk_r_digest;
  Digest vk_in_digest;
  std::int32_t scale_bits = checkpoint::kDefaultScaleBits;
};

struct ProofKeys {
  ProvingKey pk;
  VerifyingKey vk;
};

ProofKeys key_gen(const PublicParams& pp);

/// h(vk_in)
Digest vk_in_digest(const PublicParams& pp, const VerifyingKeyIn& vk_in);
Digest vk_r_digest(const PublicParams& pp, const VerifyingKeyR& vk_r);

using PredicateIds = std::array<Digest, 3>;
PredicateIds predicate_ids(const PublicParams& pp, const predicates::PredicateConfig& cfg);

struct IdentityRecord {
  std::uint32_t index = 0;
  Commitment cp;
  Commitment irpk;
  checkpoint::WeightCheckpoint w;
  PredicateIds predicate_ids;
  // AUX
  Fr cr_kp;
  std::int32_t scale_bits = checkpoint::kDefaultScaleBits;
  Digest acs_params;
};

/// Commitment message of one record: irpk digest, quantized weights, predicate ids.
std::vector<Fr> ir_message(const PublicParams& pp, const Commitment& irpk, const checkpoint::WeightCheckpoint& w,
                           const PredicateIds& ids, int scale_bits);
/// cr_kp + crh(i): per-index randomness.
Fr ir_randomness(const PublicParams& pp, const Fr& cr_kp, std::uint32_t index);

struct IrBundle {
  std::vector<IdentityRecord> records;
  std::vector<Commitment> cps;
};

IrBundle ir_gen(const PublicParams& pp, const Commitment& irpk, const checkpoint::CheckpointSequence& seq,
                const predicates::PredicateConfig& cfg, const Fr& cr_kp,
                int scale_bits = checkpoint::kDefaultScaleBits);

Bytes encode_records(const checkpoint::Architecture& arch, const std::vector<IdentityRecord>& records);
std::pair<checkpoint::Architecture, std::vector<IdentityRecord>> decode_records(std::span<const std::uint8_t> bytes);

struct InnerStatement {
  std::vector<Commitment> cps;
  PredicateIds predicate_ids;
  std::int32_t scale_bits = checkpoint::kDefaultScaleBits;
};

struct InnerWitness {
  Commitment irpk;
  checkpoint::CheckpointSequence seq;
  predicates::PredicateConfig cfg;
  Fr cr_kp;
  std::uint64_t predicate_seed = 0;
};

struct InnerProof {
  std::vector<pcs::OpeningInstance> instances;
  Fr z;
  Fr rho;
  Digest report_digest;
  pcs::OpeningInstance batched;

  Bytes encode() const;
  static InnerProof decode(std::span<const std::uint8_t> bytes);
};

struct InnerResult {
  InnerProof proof;
  predicates::PredicateReport report;
};

/// Checks openings, evaluates the predicates (fails closed), then commits and
/// opens every quantized checkpoint at a transcript point and batches them.
InnerResult inner_prove(const PublicParams& pp, const ProvingKey& pk, const InnerStatement& s,
                        const InnerWitness& j);

/// Recomputes z, rho and the batched instance of a claimed inner proof.
bool inner_consistent(const PublicParams& pp, const Digest& vk_in_digest, const InnerStatement& s,
                      const InnerProof& pi);

/// PCP, the owner's address and the IR commitments.
struct OuterStatement {
  Commitment pcp;
  Commitment irpk;
  std::vector<Commitment> cps;
};

/// vk_in_digest is J_out proper; the shipped backend also needs the
/// address secrets that tie PCP to IRPK.
struct OuterWitness {
  Digest vk_in_digest;
  Fr sk_pr;
  Fr cr_kp;
};

/// Backend-specific bytes.
struct OuterProof {
  Bytes data;
};

struct NizkContext {
  const PublicParams& pp;
  const VerifyingKeyR& vk_r;
  Digest vk_r_digest;
  Digest vk_in_digest;
  /// Encodings of accu_out and pi_ACS bound into the challenge.
  Bytes binding;
};

/// NIZK.{Prove,Verify} for relation R.
class NizkBackend {
 public:
  virtual ~NizkBackend() = default;
  virtual std::string_view id() const = 0;
  virtual OuterProof prove(const NizkContext& ctx, const OuterStatement& s, const OuterWitness& w) const = 0;
  virtual bool verify(const NizkContext& ctx, const OuterStatement& s, const OuterProof& p) const = 0;
};

/// Sigma protocol, Fiat-Shamir compiled: knowledge of (sk, r) with
/// IRPK = sk G0 + r H and PCP - h G0 = r H. 160-byte proofs.
class SchnorrBackend final : public NizkBackend {
 public:
  static constexpr std::size_t kProofSize = 2 * crypto::kG1CompressedSize + 2 * 32;
  std::string_view id() const override { return "schnorr-okamoto-v1"; }
  OuterProof prove(const NizkContext& ctx, const OuterStatement& s, const OuterWitness& w) const override;
  bool verify(const NizkContext& ctx, const OuterStatement& s, const OuterProof& p) const override;
};

const NizkBackend& default_backend();

struct OuterResult {
  OuterProof pi_out;
  Commitment pcp;
  pcs::AccumulatorValue accu;
  pcs::AccumulatorProof pi_acs;
  OpCounters ops;
};

OuterResult outer_prove(const PublicParams& pp, const ProvingKey& pk, const VerifyingKey& vk,
                        const InnerStatement& s_inp, const OuterWitness& j_out, const Commitment& irpk,
                        const InnerProof& pi_in, const NizkBackend& backend = default_backend());

/// Bit result; malformed inputs throw during decoding, never here.
bool verify(const PublicParams& pp, const VerifyingKey& vk, const OuterStatement& s, const OuterProof& pi_out,
            const pcs::AccumulatorValue& accu, const pcs::AccumulatorProof& pi_acs, OpCounters* ops = nullptr,
            const NizkBackend& backend = default_backend());

/// Everything a verifier sees: statement, pi_out, accumulator, pi_ACS.
struct OuterBundle {
  OuterStatement statement;
  OuterProof pi_out;
  pcs::AccumulatorValue accu;
  pcs::AccumulatorProof pi_acs;

  Bytes encode() const;
  static OuterBundle decode(std::span<const std::uint8_t> bytes);
};

}  // namespace didm::protocol
