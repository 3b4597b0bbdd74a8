// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "didm/crypto/curve.hpp"
#include "didm/util/bytes.hpp"

namespace didm::crypto {

using Commitment = G1;

/// pp_C: message generators G_0..G_{n-1} and the blinding generator H.
class CommitParams {
 public:
  static CommitParams generate(std::span<const std::uint8_t> seed, std::size_t capacity);

  std::size_t capacity() const { return gens_.size(); }
  const std::vector<G1>& generators() const { return gens_; }
  const G1& blinding() const { return h_; }
  const Bytes& seed() const { return seed_; }

 private:
  Bytes seed_;
  std::vector<G1> gens_;
  G1 h_;
};

/// sum m_j G_j + r H. Throws std::length_error if m exceeds the capacity.
Commitment cs_commit(const CommitParams& pp, std::span<const Fr> m, const Fr& r);
bool cs_open(const CommitParams& pp, const Commitment& com, std::span<const Fr> m, const Fr& r);

}  // namespace didm::crypto
