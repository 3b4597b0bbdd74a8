// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "didm/crypto/field.hpp"
#include "didm/util/bytes.hpp"

namespace didm::checkpoint {

class ArchitectureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class QuantizationError : public std::range_error {
 public:
  using std::range_error::range_error;
};

struct LayerShape {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint32_t bias_len = 0;

  std::size_t params() const { return std::size_t{rows} * cols + bias_len; }
  friend bool operator==(const LayerShape&, const LayerShape&) = default;
};

/// Dense layers; layer t maps cols inputs to rows outputs.
struct Architecture {
  std::vector<LayerShape> layers;

  /// in -> hidden... -> out, tanh between layers.
  static Architecture mlp(std::span<const std::uint32_t> widths);

  void validate() const;
  std::size_t total_params() const;
  friend bool operator==(const Architecture&, const Architecture&) = default;
};

struct Layer {
  std::vector<double> weights;  // row-major rows x cols
  std::vector<double> bias;
  friend bool operator==(const Layer&, const Layer&) = default;
};

struct WeightCheckpoint {
  std::uint32_t epoch = 0;
  std::vector<Layer> layers;

  std::size_t total_w() const;
  /// Throws ArchitectureError when shapes differ or an entry is not finite.
  void check_against(const Architecture& arch) const;
  friend bool operator==(const WeightCheckpoint&, const WeightCheckpoint&) = default;
};

struct CheckpointSequence {
  Architecture arch;
  std::vector<WeightCheckpoint> checkpoints;

  /// Index of the final checkpoint.
  std::size_t last_epoch() const { return checkpoints.empty() ? 0 : checkpoints.size() - 1; }
  const WeightCheckpoint& first() const { return checkpoints.front(); }
  const WeightCheckpoint& last() const { return checkpoints.back(); }
  void validate() const;
  friend bool operator==(const CheckpointSequence&, const CheckpointSequence&) = default;
};

WeightCheckpoint zeros_like(const Architecture& arch, std::uint32_t epoch = 0);

/// sqrt(sum_t ||a_t - b_t||_F^2) / total_w, biases included.
double dl_distance(const WeightCheckpoint& a, const WeightCheckpoint& b);

/// Layer-major, row-major, weights before bias.
std::vector<double> flatten(const WeightCheckpoint& w);
WeightCheckpoint unflatten(const Architecture& arch, std::span<const double> flat, std::uint32_t epoch);

inline constexpr int kDefaultScaleBits = 16;

struct QuantizedVector {
  std::vector<crypto::Fr> values;
  int scale_bits = kDefaultScaleBits;
};

/// round(x * 2^scale_bits), half away from zero; negatives map to r - |q|.
QuantizedVector quantize(std::span<const double> v, int scale_bits = kDefaultScaleBits);
std::vector<double> dequantize(const QuantizedVector& q);

inline constexpr std::uint16_t kSequenceFormatVersion = 1;

Bytes encode_sequence(const CheckpointSequence& seq);
/// Throws DecodeError on bad magic, version, truncation or shape problems.
CheckpointSequence decode_sequence(std::span<const std::uint8_t> bytes);

}  // namespace didm::checkpoint
