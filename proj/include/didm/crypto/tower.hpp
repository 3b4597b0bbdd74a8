// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "didm/crypto/field.hpp"

namespace didm::crypto {

// Fp2 = Fp[u]/(u^2 + 1)
struct Fp2 {
  Fp c0;
  Fp c1;

  static Fp2 zero() { return {}; }
  static Fp2 one() { return {Fp::one(), Fp::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  friend bool operator==(const Fp2& a, const Fp2& b) { return a.c0 == b.c0 && a.c1 == b.c1; }

  friend Fp2 operator+(const Fp2& a, const Fp2& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
  friend Fp2 operator-(const Fp2& a, const Fp2& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  Fp2 operator-() const { return {-c0, -c1}; }
  friend Fp2 operator*(const Fp2& a, const Fp2& b) {
    const Fp aa = a.c0 * b.c0;
    const Fp bb = a.c1 * b.c1;
    return {aa - bb, (a.c0 + a.c1) * (b.c0 + b.c1) - aa - bb};
  }
  friend Fp2 operator*(const Fp2& a, const Fp& s) { return {a.c0 * s, a.c1 * s}; }
  Fp2& operator+=(const Fp2& b) { return *this = *this + b; }
  Fp2& operator-=(const Fp2& b) { return *this = *this - b; }
  Fp2& operator*=(const Fp2& b) { return *this = *this * b; }

  Fp2 square() const {
    const Fp t = c0 * c1;
    return {(c0 + c1) * (c0 - c1), t + t};
  }
  Fp2 doubled() const { return *this + *this; }
  Fp2 conjugate() const { return {c0, -c1}; }

  // multiply by the sextic non-residue xi = 1 + u
  Fp2 mul_by_xi() const { return {c0 - c1, c0 + c1}; }

  Fp2 inverse() const {
    const Fp inv = (c0.square() + c1.square()).inverse();
    return {c0 * inv, -(c1 * inv)};
  }

  template <std::size_t M>
  Fp2 pow(const Limbs<M>& e) const {
    Fp2 acc = one();
    for (std::size_t i = detail::bit_length(e); i-- > 0;) {
      acc = acc.square();
      if (detail::test_bit(e, i)) acc *= *this;
    }
    return acc;
  }

  std::optional<Fp2> sqrt() const;

  // c1 decides; c0 breaks ties when c1 == 0
  bool lexicographically_largest() const {
    if (!c1.is_zero()) return c1.lexicographically_largest();
    return c0.lexicographically_largest();
  }
};

// Fp6 = Fp2[v]/(v^3 - xi)
struct Fp6 {
  Fp2 c0;
  Fp2 c1;
  Fp2 c2;

  static Fp6 zero() { return {}; }
  static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  friend bool operator==(const Fp6& a, const Fp6& b) {
    return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
  }

  friend Fp6 operator+(const Fp6& a, const Fp6& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
  friend Fp6 operator-(const Fp6& a, const Fp6& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }
  Fp6 operator-() const { return {-c0, -c1, -c2}; }
  friend Fp6 operator*(const Fp6& a, const Fp6& b) {
    const Fp2 aa = a.c0 * b.c0;
    const Fp2 bb = a.c1 * b.c1;
    const Fp2 cc = a.c2 * b.c2;
    const Fp2 t0 = ((a.c1 + a.c2) * (b.c1 + b.c2) - bb - cc).mul_by_xi() + aa;
    const Fp2 t1 = (a.c0 + a.c1) * (b.c0 + b.c1) - aa - bb + cc.mul_by_xi();
    const Fp2 t2 = (a.c0 + a.c2) * (b.c0 + b.c2) - aa - cc + bb;
    return {t0, t1, t2};
  }
  Fp6& operator*=(const Fp6& b) { return *this = *this * b; }

  // multiply by v: (c0 + c1 v + c2 v^2) v = xi c2 + c0 v + c1 v^2
  Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }

  Fp6 inverse() const {
    const Fp2 t0 = c0.square() - (c1 * c2).mul_by_xi();
    const Fp2 t1 = c2.square().mul_by_xi() - c0 * c1;
    const Fp2 t2 = c1.square() - c0 * c2;
    const Fp2 norm = c0 * t0 + (c2 * t1 + c1 * t2).mul_by_xi();
    const Fp2 inv = norm.inverse();
    return {t0 * inv, t1 * inv, t2 * inv};
  }
};

// Fp12 = Fp6[w]/(w^2 - v)
struct Fp12 {
  Fp6 c0;
  Fp6 c1;

  static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

  bool is_one() const { return *this == one(); }
  friend bool operator==(const Fp12& a, const Fp12& b) { return a.c0 == b.c0 && a.c1 == b.c1; }

  friend Fp12 operator*(const Fp12& a, const Fp12& b) {
    const Fp6 aa = a.c0 * b.c0;
    const Fp6 bb = a.c1 * b.c1;
    return {aa + bb.mul_by_v(), (a.c0 + a.c1) * (b.c0 + b.c1) - aa - bb};
  }
  Fp12& operator*=(const Fp12& b) { return *this = *this * b; }

  Fp12 square() const { return *this * *this; }
  Fp12 conjugate() const { return {c0, -c1}; }

  Fp12 inverse() const {
    const Fp6 norm = c0 * c0 - (c1 * c1).mul_by_v();
    const Fp6 inv = norm.inverse();
    return {c0 * inv, -(c1 * inv)};
  }

  /// Fixed 4-bit window exponentiation.
  template <std::size_t M>
  Fp12 pow(const Limbs<M>& e) const {
    std::array<Fp12, 16> table;
    table[0] = one();
    for (std::size_t i = 1; i < 16; ++i) table[i] = table[i - 1] * *this;
    const std::size_t bits = detail::bit_length(e);
    const std::size_t windows = (bits + 3) / 4;
    Fp12 acc = one();
    for (std::size_t w = windows; w-- > 0;) {
      for (int s = 0; s < 4; ++s) acc = acc.square();
      const std::size_t idx = (e[(4 * w) / 64] >> ((4 * w) % 64)) & 0xF;
      if (idx != 0) acc *= table[idx];
    }
    return acc;
  }
};

}  // namespace didm::crypto
