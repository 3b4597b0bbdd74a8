// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/crypto/msm.hpp"

#include <stdexcept>
#include <vector>

namespace didm::crypto {
namespace {

std::size_t window_bits(std::size_t n) {
  if (n < 32) return 3;
  if (n < 256) return 4;
  if (n < 2048) return 6;
  return 8;
}

void check_sizes(std::span<const G1> points, std::span<const Fr> scalars) {
  if (points.size() != scalars.size()) throw std::invalid_argument("msm: size mismatch");
}

}  // namespace

G1 msm(std::span<const G1> points, std::span<const Fr> scalars) {
  check_sizes(points, scalars);
  const std::size_t n = points.size();
  if (n == 0) return G1::identity();
  if (n == 1) return points[0] * scalars[0];

  std::vector<Limbs<4>> ks(n);
  for (std::size_t i = 0; i < n; ++i) ks[i] = scalars[i].to_canonical();

  const std::size_t c = window_bits(n);
  const std::size_t windows = (Fr::kBits + c - 1) / c;
  std::vector<G1> partial(windows);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t w = 0; w < static_cast<std::ptrdiff_t>(windows); ++w) {
    std::vector<G1> buckets((std::size_t{1} << c) - 1);
    const std::size_t shift = static_cast<std::size_t>(w) * c;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t idx = 0;
      for (std::size_t b = 0; b < c && shift + b < 256; ++b) {
        if (detail::test_bit(ks[i], shift + b)) idx |= std::size_t{1} << b;
      }
      if (idx != 0) buckets[idx - 1] += points[i];
    }
    G1 running;
    G1 sum;
    for (std::size_t j = buckets.size(); j-- > 0;) {
      running += buckets[j];
      sum += running;
    }
    partial[static_cast<std::size_t>(w)] = sum;
  }

  G1 acc;
  for (std::size_t w = windows; w-- > 0;) {
    for (std::size_t b = 0; b < c; ++b) acc = acc.doubled();
    acc += partial[w];
  }
  return acc;
}

G1 msm_serial(std::span<const G1> points, std::span<const Fr> scalars) {
  check_sizes(points, scalars);
  G1 acc;
  for (std::size_t i = 0; i < points.size(); ++i) acc += points[i] * scalars[i];
  return acc;
}

}  // namespace didm::crypto
