// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "didm/crypto/hash.hpp"
#include "didm/pcs/kzg.hpp"

namespace didm::pcs {

using crypto::Digest;
using crypto::HashParams;

/// Two G1 elements; the deferred check is e(lhs, G2) == e(rhs, tau G2).
struct AccumulatorValue {
  G1 lhs;
  G1 rhs;

  static constexpr std::size_t kEncodedSize = 2 * crypto::kG1CompressedSize;

  std::array<std::uint8_t, kEncodedSize> encode() const;
  static AccumulatorValue decode(std::span<const std::uint8_t> bytes);
  friend bool operator==(const AccumulatorValue&, const AccumulatorValue&) = default;
};

struct AccumulatorProof {
  Fr rho;
  Fr rho_hat;
  Digest transcript;
  /// Batched instance whose pairing operands were folded in.
  OpeningInstance batched;

  void encode(ByteWriter& w) const;
  static AccumulatorProof decode(ByteReader& r);
  friend bool operator==(const AccumulatorProof&, const AccumulatorProof&) = default;
};

struct AcsProverKey {
  Srs srs;
};

struct AcsVerifierKey {
  G1 g1;
};

struct AcsDeciderKey {
  G2 g2;
  G2 g2_tau;
};

struct AcsKeys {
  AcsProverKey apk;
  AcsVerifierKey avk;
  AcsDeciderKey dk;
};

AcsKeys acs_keygen(const Srs& srs);

/// Fiat-Shamir scalar from a transcript; a zero output is resampled with a counter.
Fr derive_rho(const HashParams& hp, std::string_view context, std::span<const std::uint8_t> transcript);

/// C_B = sum rho^i C_i, likewise v_B and pi_B. All instances must share z.
OpeningInstance batch(std::span<const OpeningInstance> instances, const Fr& rho, OpCounters* ops = nullptr);

/// Deferred pairing operands of one instance: (C - vG1 + z pi, pi).
std::pair<G1, G1> pairing_operands(const OpeningInstance& q, const G1& g1, OpCounters* ops = nullptr);

std::pair<AccumulatorValue, AccumulatorProof> acs_prove(const HashParams& hp, const AcsProverKey& apk,
                                                        std::span<const OpeningInstance> q_in,
                                                        const Digest& vk_in_digest,
                                                        const std::optional<AccumulatorValue>& accu_in,
                                                        OpCounters* ops = nullptr);

/// Group operations only; never evaluates a pairing.
bool acs_verify(const HashParams& hp, const AcsVerifierKey& avk, const Digest& vk_in_digest,
                std::span<const OpeningInstance> q_in, const std::optional<AccumulatorValue>& accu_in,
                const AccumulatorValue& accu_out, const AccumulatorProof& pi, OpCounters* ops = nullptr);

/// Exactly one pairing-product check.
bool acs_decide(const AcsDeciderKey& dk, const AccumulatorValue& accu, OpCounters* ops = nullptr);

}  // namespace didm::pcs
