// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "didm/crypto/curve.hpp"
#include "didm/crypto/field.hpp"
#include "didm/util/bytes.hpp"

namespace didm::crypto {

/// Hash outputs are scalars; serialized as 32 bytes little-endian.
using Digest = Fr;
using DigestBytes = std::array<std::uint8_t, 32>;

inline DigestBytes digest_bytes(const Digest& d) { return d.to_bytes_le(); }
Digest digest_from_bytes(std::span<const std::uint8_t> bytes);

enum class HashVariant : std::uint8_t { kSponge = 0, kGroup = 1 };

inline constexpr std::size_t kDomainTagSize = 16;

/// "A2DIDM/<context>" zero-padded to 16 bytes. Context is at most 9 chars.
std::array<std::uint8_t, kDomainTagSize> domain_tag(std::string_view context);

/// pp_H. Immutable after generation.
class HashParams {
 public:
  static constexpr std::size_t kWidth = 3;
  static constexpr std::size_t kRate = 2;
  static constexpr std::size_t kFullRounds = 8;
  static constexpr std::size_t kPartialRounds = 57;
  static constexpr std::size_t kGroupGenerators = 16;

  static HashParams generate(std::span<const std::uint8_t> seed, HashVariant variant = HashVariant::kSponge);

  HashVariant variant() const { return variant_; }
  const Bytes& seed() const { return seed_; }

  void permute(std::array<Fr, kWidth>& state) const;
  const std::vector<G1>& group_generators() const { return group_gens_; }

 private:
  HashVariant variant_ = HashVariant::kSponge;
  Bytes seed_;
  std::vector<Fr> round_constants_;
  std::array<std::array<Fr, kWidth>, kWidth> mds_{};
  std::vector<G1> group_gens_;
};

/// crh_val over a scalar message. The domain tag is absorbed first, so the
/// empty message hashes the tag alone.
Digest crh_val(const HashParams& pp, std::string_view context, std::span<const Fr> msg);

/// Byte messages are packed into 31-byte chunks behind a length word.
Digest crh_val(const HashParams& pp, std::string_view context, std::span<const std::uint8_t> msg);

std::vector<Fr> pack_bytes(std::span<const std::uint8_t> msg);

}  // namespace didm::crypto
