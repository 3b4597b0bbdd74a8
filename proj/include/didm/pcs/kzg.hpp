// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "didm/crypto/curve.hpp"
#include "didm/crypto/pairing.hpp"
#include "didm/util/bytes.hpp"

namespace didm::pcs {

using crypto::Fr;
using crypto::G1;
using crypto::G2;
using crypto::OpCounters;

/// Coefficients, lowest degree first.
using Polynomial = std::vector<Fr>;

Fr evaluate(std::span<const Fr> poly, const Fr& z);

/// Powers-of-tau reference string. tau itself is not retained.
struct Srs {
  std::vector<G1> g1_powers;
  G2 g2_gen;
  G2 g2_tau;

  std::size_t max_degree() const { return g1_powers.empty() ? 0 : g1_powers.size() - 1; }
};

Srs pc_setup(std::size_t max_degree, std::span<const std::uint8_t> seed);

/// Throws std::length_error when deg(poly) exceeds the SRS.
G1 pc_commit(const Srs& srs, std::span<const Fr> poly);

struct Opening {
  Fr value;
  G1 proof;
};

/// v = p(z), proof = commit((p(X) - v) / (X - z)).
Opening pc_open(const Srs& srs, std::span<const Fr> poly, const Fr& z);

/// e(C - vG1 + z pi, G2) == e(pi, tau G2); one pairing-product check.
bool pc_check(const Srs& srs, const G1& c, const Fr& z, const Fr& v, const G1& proof, OpCounters* ops = nullptr);

struct OpeningInstance {
  G1 commitment;
  Fr point;
  Fr value;
  G1 proof;
  std::uint32_t degree_bound = 0;

  void encode(ByteWriter& w) const;
  static OpeningInstance decode(ByteReader& r);
  friend bool operator==(const OpeningInstance&, const OpeningInstance&) = default;
};

bool pc_check(const Srs& srs, const OpeningInstance& q, OpCounters* ops = nullptr);

}  // namespace didm::pcs
