// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/forge/init.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "didm/util/rng.hpp"

namespace didm::forge {

InitSpec InitSpec::gaussian(double mu, double sigma) {
  InitSpec s;
  s.kind = Kind::kGaussian;
  s.weight = {1.0, 0.0};
  s.mean = {mu, mu};
  s.stddev = {sigma, sigma};
  return s;
}

void InitSpec::validate() const {
  const int comps = kind == Kind::kGmm2 ? 2 : 1;
  for (int k = 0; k < comps; ++k) {
    if (!(stddev[k] >= 0.0) || !std::isfinite(mean[k])) throw std::invalid_argument("invalid init component");
  }
  if (kind == Kind::kGmm2) {
    if (weight[0] < 0 || weight[1] < 0 || std::fabs(weight[0] + weight[1] - 1.0) > 1e-9) {
      throw std::invalid_argument("mixture weights must be nonnegative and sum to 1");
    }
  }
}

void InitSpec::encode(ByteWriter& w) const {
  w.u8(static_cast<std::uint8_t>(kind));
  for (int k = 0; k < 2; ++k) {
    w.f64(weight[k]);
    w.f64(mean[k]);
    w.f64(stddev[k]);
  }
}

InitSpec InitSpec::decode(ByteReader& r) {
  InitSpec s;
  const auto k = r.u8();
  if (k > 1) throw DecodeError("unknown init kind");
  s.kind = static_cast<Kind>(k);
  for (int i = 0; i < 2; ++i) {
    s.weight[i] = r.f64();
    s.mean[i] = r.f64();
    s.stddev[i] = r.f64();
  }
  return s;
}

std::string InitSpec::describe() const {
  std::ostringstream os;
  if (kind == Kind::kGaussian) {
    os << "gaussian(" << mean[0] << ", " << stddev[0] << ")";
  } else {
    os << "gmm2(" << weight[0] << ":" << mean[0] << "/" << stddev[0] << ", " << weight[1] << ":" << mean[1] << "/"
       << stddev[1] << ")";
  }
  return os.str();
}

checkpoint::WeightCheckpoint init_weights(const checkpoint::Architecture& arch, const InitSpec& spec,
                                          std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&]() {
    int k = 0;
    if (spec.kind == InitSpec::Kind::kGmm2) k = unit(rng) < spec.weight[0] ? 0 : 1;
    return spec.mean[k] + spec.stddev[k] * normal(rng);
  };
  auto w = checkpoint::zeros_like(arch, 0);
  for (auto& l : w.layers) {
    for (auto& x : l.weights) x = draw();
    for (auto& x : l.bias) x = draw();
  }
  return w;
}

}  // namespace didm::forge
