// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/predicates/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "didm/util/rng.hpp"

namespace didm::predicates {

double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("percentile of empty data");
  const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

GmmParams fit_gmm2(std::span<const double> samples, int max_iters, double tol) {
  if (samples.size() < 8) throw std::invalid_argument("fit_gmm2 needs at least 8 samples");
  std::vector<double> x(samples.begin(), samples.end());
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample");
  }
  std::sort(x.begin(), x.end());
  const auto n = static_cast<double>(x.size());

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double pooled = std::sqrt(var / n) + kSigmaFloor;

  GmmParams g;
  g.mean = {percentile_sorted(x, 25.0), percentile_sorted(x, 75.0)};
  g.stddev = {pooled, pooled};
  g.weight = {0.5, 0.5};

  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  std::vector<double> resp0(x.size());
  double prev_ll = -1e300;
  for (int it = 0; it < max_iters; ++it) {
    for (auto& s : g.stddev) s = std::max(s, kSigmaFloor);
    double ll = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double p[2];
      for (int k = 0; k < 2; ++k) {
        const double z = (x[i] - g.mean[k]) / g.stddev[k];
        p[k] = g.weight[k] * std::exp(-0.5 * z * z) * inv_sqrt_2pi / g.stddev[k];
      }
      const double tot = p[0] + p[1] + 1e-300;
      ll += std::log(tot);
      resp0[i] = p[0] / tot;
    }
    double nk[2] = {1e-300, 1e-300};
    double sx[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
      nk[0] += resp0[i];
      nk[1] += 1.0 - resp0[i];
      sx[0] += resp0[i] * x[i];
      sx[1] += (1.0 - resp0[i]) * x[i];
    }
    GmmParams next;
    for (int k = 0; k < 2; ++k) {
      next.weight[k] = nk[k] / n;
      next.mean[k] = sx[k] / nk[k];
    }
    double sv[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d0 = x[i] - next.mean[0];
      const double d1 = x[i] - next.mean[1];
      sv[0] += resp0[i] * d0 * d0;
      sv[1] += (1.0 - resp0[i]) * d1 * d1;
    }
    for (int k = 0; k < 2; ++k) next.stddev[k] = std::sqrt(sv[k] / nk[k]);
    g = next;
    if (ll - prev_ll < tol) break;
    prev_ll = ll;
  }
  for (auto& s : g.stddev) s = std::max(s, kSigmaFloor);
  return g;
}

std::vector<double> sample_gmm2(const GmmParams& g, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) {
    const int k = unit(rng) < g.weight[1] ? 1 : 0;
    v = g.mean[k] + g.stddev[k] * normal(rng);
  }
  return out;
}

double emd_1d(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("emd_1d needs nonempty inputs");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const std::size_t n = sa.size();
  const std::size_t m = sb.size();
  // Breakpoints i/n and j/m, merged exactly via i*m vs j*n.
  double total = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t prev_num = 0;  // numerator over n*m
  while (i < n && j < m) {
    const std::size_t next_a = (i + 1) * m;
    const std::size_t next_b = (j + 1) * n;
    const std::size_t next = std::min(next_a, next_b);
    total += static_cast<double>(next - prev_num) * std::fabs(sa[i] - sb[j]);
    prev_num = next;
    if (next_a == next) ++i;
    if (next_b == next) ++j;
  }
  return total / (static_cast<double>(n) * static_cast<double>(m));
}

PcaResult pca_max_ratio(std::span<const double> data, std::size_t rows, std::size_t cols) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("pca needs at least 2 samples and 2 features");
  if (data.size() != rows * cols) throw std::invalid_argument("pca data size mismatch");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[r * cols + c];
  }
  const Eigen::RowVectorXd mu = m.colwise().mean();
  m.rowwise() -= mu;
  const Eigen::MatrixXd cov = (m.transpose() * m) / static_cast<double>(rows - 1);
  const double trace = cov.trace();
  // centering residue of a constant column is rounding noise, not variance
  double scale = 0.0;
  for (double v : data) scale = std::max(scale, std::fabs(v));
  if (!(trace > 1e-24 * (1.0 + scale * scale))) return {1.0, true};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().maxCoeff() / trace, false};
}

}  // namespace didm::predicates
