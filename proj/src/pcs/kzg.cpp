// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/pcs/kzg.hpp"

#include <stdexcept>

#include "didm/crypto/codec.hpp"
#include "didm/crypto/msm.hpp"
#include "didm/crypto/prng.hpp"

namespace didm::pcs {

Fr evaluate(std::span<const Fr> poly, const Fr& z) {
  Fr acc;
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * z + poly[i];
  return acc;
}

Srs pc_setup(std::size_t max_degree, std::span<const std::uint8_t> seed) {
  if (max_degree < 1) throw std::invalid_argument("SRS degree must be at least 1");
  crypto::SeedStream stream("A2DIDM/srs-tau", seed);
  Fr tau = stream.next_scalar();
  while (tau.is_zero()) tau = stream.next_scalar();

  std::vector<Fr> powers(max_degree + 1);
  powers[0] = Fr::one();
  for (std::size_t k = 1; k <= max_degree; ++k) powers[k] = powers[k - 1] * tau;

  Srs srs;
  srs.g1_powers.resize(max_degree + 1);
  const G1 g = G1::generator();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k <= static_cast<std::ptrdiff_t>(max_degree); ++k) {
    srs.g1_powers[static_cast<std::size_t>(k)] = g * powers[static_cast<std::size_t>(k)];
  }
  srs.g2_gen = G2::generator();
  srs.g2_tau = srs.g2_gen * tau;
  return srs;
}

G1 pc_commit(const Srs& srs, std::span<const Fr> poly) {
  if (poly.size() > srs.g1_powers.size()) throw std::length_error("polynomial degree exceeds SRS");
  return crypto::msm(std::span(srs.g1_powers).first(poly.size()), poly);
}

Opening pc_open(const Srs& srs, std::span<const Fr> poly, const Fr& z) {
  if (poly.size() > srs.g1_powers.size()) throw std::length_error("polynomial degree exceeds SRS");
  Opening out{evaluate(poly, z), G1::identity()};
  if (poly.size() <= 1) return out;
  // synthetic division by (X - z)
  std::vector<Fr> q(poly.size() - 1);
  Fr carry;
  for (std::size_t i = poly.size() - 1; i >= 1; --i) {
    carry = poly[i] + carry * z;
    q[i - 1] = carry;
  }
  out.proof = pc_commit(srs, q);
  return out;
}

bool pc_check(const Srs& srs, const G1& c, const Fr& z, const Fr& v, const G1& proof, OpCounters* ops) {
  const G1 lhs = c - srs.g1_powers[0] * v + proof * z;
  const std::array<std::pair<G1, G2>, 2> terms{{{lhs, srs.g2_gen}, {-proof, srs.g2_tau}}};
  return crypto::pairing_product_is_one(terms, ops);
}

bool pc_check(const Srs& srs, const OpeningInstance& q, OpCounters* ops) {
  if (q.degree_bound > srs.max_degree()) return false;
  return pc_check(srs, q.commitment, q.point, q.value, q.proof, ops);
}

void OpeningInstance::encode(ByteWriter& w) const {
  crypto::write_g1(w, commitment);
  crypto::write_scalar(w, point);
  crypto::write_scalar(w, value);
  crypto::write_g1(w, proof);
  w.u32(degree_bound);
}

OpeningInstance OpeningInstance::decode(ByteReader& r) {
  OpeningInstance q;
  q.commitment = crypto::read_g1(r);
  q.point = crypto::read_scalar(r);
  q.value = crypto::read_scalar(r);
  q.proof = crypto::read_g1(r);
  q.degree_bound = r.u32();
  return q;
}

}  // namespace didm::pcs
