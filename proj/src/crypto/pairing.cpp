// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/crypto/pairing.hpp"

namespace didm::crypto {
namespace {

// |x| for the BLS parameter x = -0xd201000000010000
constexpr std::uint64_t kAbsX = 0xd201000000010000ULL;

// (p^6 + 1) / r
constexpr Limbs<32> kHardExponent = detail::parse_hex<32>(
    "0x28b3148775037b6f235c55ca7566dbf85ae664cf5bb36579aea83c48c1dae0ec9031179bdeccad7375a3763bdf7ccf56"
    "fb1573beaa8c548ce0809bc5f61afb46e197bd2fa4899f0c50126c802eec85a2e707f08418554744497f8b2f2922967878"
    "febcb95d1f1304275ef499dffb12d6a874d21b73da2b822f514a9c4f6fee6a95db11e63f565e886c94c4f82384c3b5e2f5"
    "57c0b15f27d7bd90935021c3f007c01e7ebe3afc816101ddd076117d1d615d49e2764d7bc3b5ef4b188a20b038ee1cd477"
    "8e0de7338259c22a12bd40224741b36fec77602d7271563890f1333a09c4497903f76e9cf0f70a61c791e209a5256de038"
    "1a168739e1cdc0705d6a");

// (x - 1)^2 / 3
constexpr Limbs<2> kLambda3 = detail::parse_hex<2>("0x396c8c005555e1568c00aaab0000aaab");

// (p - 1) / 6
constexpr Limbs<6> kFrobExp = detail::parse_hex<6>(
    "0x045582fc5eeaa66f0c849bf3b5e1f223e613e1eb7deb831fe688231ad3c82906051caaaa72e3555549aa7ffffffff1c7");

// Over Fp2 the element is sum a_k w^k with w^6 = xi, and (a_k w^k)^p =
// conj(a_k) gamma^k w^k for gamma = xi^((p-1)/6).
Fp12 frobenius(const Fp12& f) {
  static const std::array<Fp2, 6> gamma = [] {
    std::array<Fp2, 6> g;
    g[0] = Fp2::one();
    g[1] = Fp2::one().mul_by_xi().pow(kFrobExp);
    for (std::size_t k = 2; k < 6; ++k) g[k] = g[k - 1] * g[1];
    return g;
  }();
  Fp12 r;
  r.c0.c0 = f.c0.c0.conjugate();
  r.c1.c0 = f.c1.c0.conjugate() * gamma[1];
  r.c0.c1 = f.c0.c1.conjugate() * gamma[2];
  r.c1.c1 = f.c1.c1.conjugate() * gamma[3];
  r.c0.c2 = f.c0.c2.conjugate() * gamma[4];
  r.c1.c2 = f.c1.c2.conjugate() * gamma[5];
  return r;
}

// f^x for f in the cyclotomic subgroup, where inversion is conjugation.
Fp12 pow_x(const Fp12& f) {
  Fp12 acc = f;
  for (int i = 62; i >= 0; --i) {
    acc = acc.square();
    if (((kAbsX >> i) & 1U) != 0) acc *= f;
  }
  return acc.conjugate();
}

// Line through the untwisted T with twist slope lambda, evaluated at P and
// scaled by w^3: (lambda x_T - y_T) - lambda x_P v + y_P v w.
Fp12 line(const Fp2& lambda, const Fp2& xt, const Fp2& yt, const Fp& xp, const Fp& yp) {
  Fp12 l;
  l.c0.c0 = lambda * xt - yt;
  l.c0.c1 = -(lambda * xp);
  l.c1.c1 = Fp2{yp, Fp::zero()};
  return l;
}

}  // namespace

Fp12 miller_loop(const G1& p, const G2& q) {
  if (p.is_identity() || q.is_identity()) return Fp12::one();
  const auto pa = p.to_affine();
  const auto qa = q.to_affine();
  Fp2 tx = qa.x;
  Fp2 ty = qa.y;
  Fp12 f = Fp12::one();
  for (int i = 62; i >= 0; --i) {
    f = f.square();
    {
      const Fp2 x2 = tx.square();
      const Fp2 lambda = (x2.doubled() + x2) * ty.doubled().inverse();
      f *= line(lambda, tx, ty, pa.x, pa.y);
      const Fp2 nx = lambda.square() - tx.doubled();
      ty = lambda * (tx - nx) - ty;
      tx = nx;
    }
    if (((kAbsX >> i) & 1U) != 0) {
      const Fp2 lambda = (qa.y - ty) * (qa.x - tx).inverse();
      f *= line(lambda, tx, ty, pa.x, pa.y);
      const Fp2 nx = lambda.square() - tx - qa.x;
      ty = lambda * (tx - nx) - ty;
      tx = nx;
    }
  }
  // x < 0
  return f.conjugate();
}

// Easy part f^((p^6 - 1)(p^2 + 1)), then the hard part (p^4 - p^2 + 1)/r
// written in base p as l0 + l1 p + l2 p^2 + l3 p^3 with l3 = (x - 1)^2/3,
// l2 = l3 x, l1 = l2 x - l3, l0 = l1 x + 1.
Fp12 final_exponentiation(const Fp12& f) {
  Fp12 t = f.conjugate() * f.inverse();
  t = frobenius(frobenius(t)) * t;
  const Fp12 a3 = t.pow(kLambda3);
  const Fp12 a2 = pow_x(a3);
  const Fp12 a1 = pow_x(a2) * a3.conjugate();
  const Fp12 a0 = pow_x(a1) * t;
  return a0 * frobenius(a1) * frobenius(frobenius(a2)) * frobenius(frobenius(frobenius(a3)));
}

Fp12 final_exponentiation_reference(const Fp12& f) {
  const Fp12 easy = f.conjugate() * f.inverse();
  return easy.pow(kHardExponent);
}

Fp12 pairing(const G1& p, const G2& q) { return final_exponentiation(miller_loop(p, q)); }

bool pairing_product_is_one(std::span<const std::pair<G1, G2>> terms, OpCounters* ops) {
  Fp12 f = Fp12::one();
  for (const auto& [p, q] : terms) {
    f *= miller_loop(p, q);
    if (ops != nullptr) ++ops->miller_loops;
  }
  if (ops != nullptr) ++ops->final_exponentiations;
  return final_exponentiation(f).is_one();
}

}  // namespace didm::crypto
