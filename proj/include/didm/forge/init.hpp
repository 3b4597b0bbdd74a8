// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "didm/checkpoint/checkpoint.hpp"
#include "didm/util/bytes.hpp"

namespace didm::forge {

/// Weight initialization distribution. For gmm2, weight[k], mean[k], stddev[k]
/// describe the two components; for gaussian only component 0 is used.
struct InitSpec {
  enum class Kind : std::uint8_t { kGmm2 = 0, kGaussian = 1 };

  Kind kind = Kind::kGmm2;
  std::array<double, 2> weight{0.5, 0.5};
  std::array<double, 2> mean{-0.1, 0.1};
  std::array<double, 2> stddev{0.02, 0.02};

  static InitSpec gaussian(double mu, double sigma);
  void validate() const;
  void encode(ByteWriter& w) const;
  static InitSpec decode(ByteReader& r);
  std::string describe() const;
  friend bool operator==(const InitSpec&, const InitSpec&) = default;
};

/// Every scalar drawn iid from spec; epoch 0.
checkpoint::WeightCheckpoint init_weights(const checkpoint::Architecture& arch, const InitSpec& spec,
                                          std::uint64_t seed);

}  // namespace didm::forge
