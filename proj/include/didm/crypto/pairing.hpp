// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "didm/crypto/curve.hpp"
#include "didm/crypto/tower.hpp"

namespace didm::crypto {

/// Operation tallies reported by the accumulation and verification paths.
struct OpCounters {
  std::uint64_t miller_loops = 0;
  std::uint64_t final_exponentiations = 0;
  std::uint64_t g1_scalar_muls = 0;
  std::uint64_t g1_additions = 0;

  /// One pairing-product check is one final exponentiation.
  std::uint64_t pairing_checks() const { return final_exponentiations; }
};

Fp12 miller_loop(const G1& p, const G2& q);
Fp12 final_exponentiation(const Fp12& f);
/// Plain square-and-multiply by (p^6 + 1)/r after the conjugate split; slow, kept for tests.
Fp12 final_exponentiation_reference(const Fp12& f);

/// Optimal ate pairing into the order-r subgroup of Fp12*.
Fp12 pairing(const G1& p, const G2& q);

/// prod e(P_i, Q_i) == 1, sharing one final exponentiation.
bool pairing_product_is_one(std::span<const std::pair<G1, G2>> terms, OpCounters* ops = nullptr);

}  // namespace didm::crypto
