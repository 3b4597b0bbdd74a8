// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/crypto/commit.hpp"

#include <stdexcept>

#include "didm/crypto/msm.hpp"

namespace didm::crypto {

namespace {
constexpr std::string_view kGenDomain = "A2DIDM/commit";
}

CommitParams CommitParams::generate(std::span<const std::uint8_t> seed, std::size_t capacity) {
  CommitParams pp;
  pp.seed_.assign(seed.begin(), seed.end());
  pp.gens_.resize(capacity);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(capacity); ++i) {
    pp.gens_[static_cast<std::size_t>(i)] = hash_to_g1(kGenDomain, seed, static_cast<std::uint64_t>(i));
  }
  // index 2^64-1 is reserved for H
  pp.h_ = hash_to_g1(kGenDomain, seed, ~std::uint64_t{0});
  return pp;
}

Commitment cs_commit(const CommitParams& pp, std::span<const Fr> m, const Fr& r) {
  if (m.size() > pp.capacity()) throw std::length_error("message longer than commitment capacity");
  return msm(std::span(pp.generators()).first(m.size()), m) + pp.blinding() * r;
}

bool cs_open(const CommitParams& pp, const Commitment& com, std::span<const Fr> m, const Fr& r) {
  if (m.size() > pp.capacity()) return false;
  return cs_commit(pp, m, r) == com;
}

}  // namespace didm::crypto
