// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "didm/crypto/field.hpp"
#include "didm/util/bytes.hpp"

namespace didm::crypto {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(std::span<const std::uint8_t> data);

/// Counter-mode expansion of (domain, seed) into field elements. Used for
/// parameter generation and for every piece of protocol randomness, so all
/// outputs are reproducible from explicit seeds.
class SeedStream {
 public:
  SeedStream(std::string_view domain, std::span<const std::uint8_t> seed);

  std::array<std::uint8_t, 64> next_block();
  Fr next_scalar();
  Fp next_fp();
  std::uint64_t counter() const { return counter_; }

 private:
  Bytes prefix_;
  std::uint64_t counter_ = 0;
};

/// Sub-seed for a named context; distinct labels give unrelated seeds.
Bytes derive_seed(std::span<const std::uint8_t> master, std::string_view label);

}  // namespace didm::crypto
