// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/crypto/prng.hpp"

#include <sodium.h>

namespace didm::crypto {

Sha256Digest sha256(std::span<const std::uint8_t> data) {
  Sha256Digest out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

SeedStream::SeedStream(std::string_view domain, std::span<const std::uint8_t> seed) {
  ByteWriter w;
  w.str(domain);
  w.prefixed(seed);
  prefix_ = std::move(w).take();
}

std::array<std::uint8_t, 64> SeedStream::next_block() {
  std::array<std::uint8_t, 64> out{};
  for (std::uint8_t half = 0; half < 2; ++half) {
    Bytes msg = prefix_;
    for (int i = 0; i < 8; ++i) msg.push_back(static_cast<std::uint8_t>(counter_ >> (8 * i)));
    msg.push_back(half);
    const auto d = sha256(msg);
    std::copy(d.begin(), d.end(), out.begin() + 32 * half);
  }
  ++counter_;
  return out;
}

Fr SeedStream::next_scalar() {
  const auto block = next_block();
  return Fr::from_bytes_reduce(block);
}

Fp SeedStream::next_fp() {
  const auto block = next_block();
  return Fp::from_bytes_reduce(block);
}

Bytes derive_seed(std::span<const std::uint8_t> master, std::string_view label) {
  ByteWriter w;
  w.str("didm/derive-seed");
  w.str(label);
  w.prefixed(master);
  const auto d = sha256(w.data());
  return {d.begin(), d.end()};
}

}  // namespace didm::crypto
