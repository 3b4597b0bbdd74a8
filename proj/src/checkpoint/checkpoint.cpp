// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/checkpoint/checkpoint.hpp"

#include <cmath>
#include <string>

namespace didm::checkpoint {
namespace {

constexpr std::string_view kMagic = "DIDM";

// |q| must stay well inside the scalar field; int64 is the binding limit.
constexpr double kMaxQuantized = 9.2e18;

}  // namespace

Architecture Architecture::mlp(std::span<const std::uint32_t> widths) {
  if (widths.size() < 2) throw ArchitectureError("mlp needs input and output widths");
  Architecture a;
  for (std::size_t i = 1; i < widths.size(); ++i) a.layers.push_back({widths[i], widths[i - 1], widths[i]});
  a.validate();
  return a;
}

void Architecture::validate() const {
  if (layers.empty()) throw ArchitectureError("architecture has no layers");
  for (const auto& l : layers) {
    if (l.rows == 0 || l.cols == 0 || l.bias_len == 0) throw ArchitectureError("layer dimension is zero");
    if (l.bias_len != l.rows) throw ArchitectureError("bias length must equal rows for dense layers");
  }
}

std::size_t Architecture::total_params() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.params();
  return n;
}

std::size_t WeightCheckpoint::total_w() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.weights.size() + l.bias.size();
  return n;
}

void WeightCheckpoint::check_against(const Architecture& arch) const {
  if (layers.size() != arch.layers.size()) throw ArchitectureError("layer count mismatch");
  for (std::size_t t = 0; t < layers.size(); ++t) {
    const auto& s = arch.layers[t];
    if (layers[t].weights.size() != std::size_t{s.rows} * s.cols || layers[t].bias.size() != s.bias_len) {
      throw ArchitectureError("layer " + std::to_string(t) + " shape mismatch");
    }
    for (double x : layers[t].weights) {
      if (!std::isfinite(x)) throw ArchitectureError("non-finite weight in layer " + std::to_string(t));
    }
    for (double x : layers[t].bias) {
      if (!std::isfinite(x)) throw ArchitectureError("non-finite bias in layer " + std::to_string(t));
    }
  }
}

void CheckpointSequence::validate() const {
  arch.validate();
  if (checkpoints.size() < 2) throw ArchitectureError("sequence needs at least two checkpoints");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i].epoch != i) throw ArchitectureError("epochs must be contiguous from 0");
    checkpoints[i].check_against(arch);
  }
}

WeightCheckpoint zeros_like(const Architecture& arch, std::uint32_t epoch) {
  WeightCheckpoint w;
  w.epoch = epoch;
  for (const auto& s : arch.layers) {
    w.layers.push_back({std::vector<double>(std::size_t{s.rows} * s.cols, 0.0), std::vector<double>(s.bias_len, 0.0)});
  }
  return w;
}

double dl_distance(const WeightCheckpoint& a, const WeightCheckpoint& b) {
  if (a.layers.size() != b.layers.size()) throw ArchitectureError("checkpoints have different layer counts");
  double sum = 0.0;
  for (std::size_t t = 0; t < a.layers.size(); ++t) {
    const auto& la = a.layers[t];
    const auto& lb = b.layers[t];
    if (la.weights.size() != lb.weights.size() || la.bias.size() != lb.bias.size()) {
      throw ArchitectureError("layer " + std::to_string(t) + " shape mismatch");
    }
    for (std::size_t k = 0; k < la.weights.size(); ++k) {
      const double d = la.weights[k] - lb.weights[k];
      sum += d * d;
    }
    for (std::size_t k = 0; k < la.bias.size(); ++k) {
      const double d = la.bias[k] - lb.bias[k];
      sum += d * d;
    }
  }
  const std::size_t n = a.total_w();
  if (n == 0) throw ArchitectureError("empty checkpoint");
  return std::sqrt(sum) / static_cast<double>(n);
}

std::vector<double> flatten(const WeightCheckpoint& w) {
  std::vector<double> out;
  out.reserve(w.total_w());
  for (const auto& l : w.layers) {
    out.insert(out.end(), l.weights.begin(), l.weights.end());
    out.insert(out.end(), l.bias.begin(), l.bias.end());
  }
  return out;
}

WeightCheckpoint unflatten(const Architecture& arch, std::span<const double> flat, std::uint32_t epoch) {
  if (flat.size() != arch.total_params()) throw ArchitectureError("flat vector length does not match architecture");
  WeightCheckpoint w;
  w.epoch = epoch;
  std::size_t pos = 0;
  for (const auto& s : arch.layers) {
    Layer l;
    const std::size_t nw = std::size_t{s.rows} * s.cols;
    l.weights.assign(flat.begin() + static_cast<std::ptrdiff_t>(pos), flat.begin() + static_cast<std::ptrdiff_t>(pos + nw));
    pos += nw;
    l.bias.assign(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                  flat.begin() + static_cast<std::ptrdiff_t>(pos + s.bias_len));
    pos += s.bias_len;
    w.layers.push_back(std::move(l));
  }
  return w;
}

QuantizedVector quantize(std::span<const double> v, int scale_bits) {
  if (scale_bits < 0 || scale_bits > 52) throw QuantizationError("scale_bits out of range");
  QuantizedVector q;
  q.scale_bits = scale_bits;
  q.values.reserve(v.size());
  const double scale = std::ldexp(1.0, scale_bits);
  for (double x : v) {
    if (!std::isfinite(x)) throw QuantizationError("non-finite value");
    const double r = std::round(x * scale);
    if (std::fabs(r) >= kMaxQuantized) throw QuantizationError("value exceeds quantization range");
    q.values.push_back(crypto::Fr::from_i64(static_cast<std::int64_t>(r)));
  }
  return q;
}

std::vector<double> dequantize(const QuantizedVector& q) {
  static const auto kHalf = crypto::detail::shift_right1(crypto::Fr::kModulus);
  std::vector<double> out;
  out.reserve(q.values.size());
  for (const auto& f : q.values) {
    const bool neg = crypto::detail::geq(f.to_canonical(), kHalf);
    const auto mag = (neg ? -f : f).to_canonical();
    if (mag[1] != 0 || mag[2] != 0 || mag[3] != 0) throw QuantizationError("field element outside quantized range");
    const double m = static_cast<double>(mag[0]);
    out.push_back(std::ldexp(neg ? -m : m, -q.scale_bits));
  }
  return out;
}

Bytes encode_sequence(const CheckpointSequence& seq) {
  seq.validate();
  ByteWriter w;
  w.raw(kMagic);
  w.u16(kSequenceFormatVersion);
  w.u32(static_cast<std::uint32_t>(seq.arch.layers.size()));
  for (const auto& s : seq.arch.layers) {
    w.u32(s.rows);
    w.u32(s.cols);
    w.u32(s.bias_len);
  }
  w.u32(static_cast<std::uint32_t>(seq.checkpoints.size()));
  for (const auto& c : seq.checkpoints) {
    for (const auto& l : c.layers) {
      for (double x : l.weights) w.f64(x);
      for (double x : l.bias) w.f64(x);
    }
  }
  return std::move(w).take();
}

CheckpointSequence decode_sequence(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw DecodeError("bad magic");
  if (r.u16() != kSequenceFormatVersion) throw DecodeError("unsupported sequence format version");
  CheckpointSequence seq;
  const std::uint32_t layers = r.u32();
  if (layers == 0 || std::size_t{layers} * 12 > r.remaining()) throw DecodeError("bad layer count");
  for (std::uint32_t t = 0; t < layers; ++t) {
    LayerShape s;
    s.rows = r.u32();
    s.cols = r.u32();
    s.bias_len = r.u32();
    seq.arch.layers.push_back(s);
  }
  try {
    seq.arch.validate();
  } catch (const ArchitectureError& e) {
    throw DecodeError(std::string("shape inconsistency: ") + e.what());
  }
  const std::uint32_t count = r.u32();
  const std::size_t per = seq.arch.total_params();
  if (count < 2) throw DecodeError("sequence needs at least two checkpoints");
  if (r.remaining() != std::size_t{count} * per * 8) throw DecodeError("payload length does not match header");
  for (std::uint32_t i = 0; i < count; ++i) {
    std::vector<double> flat(per);
    for (auto& x : flat) {
      x = r.f64();
      if (!std::isfinite(x)) throw DecodeError("non-finite entry");
    }
    seq.checkpoints.push_back(unflatten(seq.arch, flat, i));
  }
  r.expect_end();
  return seq;
}

}  // namespace didm::checkpoint
