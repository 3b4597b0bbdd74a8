// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace didm::predicates {

struct GmmParams {
  std::array<double, 2> weight{0.5, 0.5};
  std::array<double, 2> mean{0.0, 0.0};
  std::array<double, 2> stddev{1.0, 1.0};
};

inline constexpr double kSigmaFloor = 1e-6;

/// EM for a two-component 1-D mixture. Means start at the 25th/75th
/// percentiles with equal weights and the pooled std. Sample order does not
/// affect the result.
GmmParams fit_gmm2(std::span<const double> samples, int max_iters = 200, double tol = 1e-8);

std::vector<double> sample_gmm2(const GmmParams& g, std::size_t n, std::uint64_t seed);

/// 1-Wasserstein distance between two empirical distributions, by exact
/// integration of the difference of quantile functions.
double emd_1d(std::span<const double> a, std::span<const double> b);

struct PcaResult {
  double ratio = 1.0;
  bool degenerate = false;
};

/// Largest eigenvalue of the sample covariance over its trace. `data` is
/// row-major rows x cols with rows as samples.
PcaResult pca_max_ratio(std::span<const double> data, std::size_t rows, std::size_t cols);

/// numpy-style linear-interpolated percentile of sorted data, q in [0, 100].
double percentile_sorted(std::span<const double> sorted, double q);

}  // namespace didm::predicates
