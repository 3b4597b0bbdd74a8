// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "didm/crypto/field.hpp"
#include "didm/crypto/tower.hpp"

namespace didm::crypto {

/// Identifier recorded in every parameter and proof file.
inline constexpr std::string_view kCurveId = "BLS12-381";

/// Raised when bytes do not decode to a valid field element or subgroup point.
class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
struct AffinePoint {
  F x;
  F y;
  bool infinity = true;
};

/// Short Weierstrass point y^2 = x^3 + b (a = 0) in Jacobian coordinates.
template <class Traits>
class Point {
 public:
  using F = typename Traits::Field;

  F x = F::one();
  F y = F::one();
  F z = F::zero();

  static Point identity() { return Point(); }
  static Point from_affine(const F& ax, const F& ay) {
    Point p;
    p.x = ax;
    p.y = ay;
    p.z = F::one();
    return p;
  }
  static Point generator() { return Traits::generator(); }

  bool is_identity() const { return z.is_zero(); }

  bool is_on_curve() const {
    if (is_identity()) return true;
    // Y^2 = X^3 + b Z^6
    const F z2 = z.square();
    const F z6 = z2.square() * z2;
    return y.square() == x.square() * x + Traits::b() * z6;
  }

  friend bool operator==(const Point& p, const Point& q) {
    if (p.is_identity() || q.is_identity()) return p.is_identity() && q.is_identity();
    const F pz2 = p.z.square();
    const F qz2 = q.z.square();
    if (!(p.x * qz2 == q.x * pz2)) return false;
    return p.y * qz2 * q.z == q.y * pz2 * p.z;
  }

  Point operator-() const {
    Point r = *this;
    r.y = -r.y;
    return r;
  }

  // dbl-2009-l
  Point doubled() const {
    if (is_identity()) return *this;
    const F a = x.square();
    const F b = y.square();
    const F c = b.square();
    const F d = ((x + b).square() - a - c).doubled();
    const F e = a.doubled() + a;
    const F f = e.square();
    Point r;
    r.x = f - d.doubled();
    r.y = e * (d - r.x) - c.doubled().doubled().doubled();
    r.z = (y * z).doubled();
    return r;
  }

  // add-2007-bl
  friend Point operator+(const Point& p, const Point& q) {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    const F z1z1 = p.z.square();
    const F z2z2 = q.z.square();
    const F u1 = p.x * z2z2;
    const F u2 = q.x * z1z1;
    const F s1 = p.y * q.z * z2z2;
    const F s2 = q.y * p.z * z1z1;
    const F h = u2 - u1;
    const F rr = (s2 - s1).doubled();
    if (h.is_zero()) {
      if (rr.is_zero()) return p.doubled();
      return identity();
    }
    const F i = h.doubled().square();
    const F j = h * i;
    const F v = u1 * i;
    Point r;
    r.x = rr.square() - j - v.doubled();
    r.y = rr * (v - r.x) - (s1 * j).doubled();
    r.z = ((p.z + q.z).square() - z1z1 - z2z2) * h;
    return r;
  }
  friend Point operator-(const Point& p, const Point& q) { return p + (-q); }
  Point& operator+=(const Point& q) { return *this = *this + q; }
  Point& operator-=(const Point& q) { return *this = *this - q; }

  /// Multiplies by a non-negative integer given as little-endian limbs (4-bit window).
  template <std::size_t M>
  Point mul_limbs(const Limbs<M>& k) const {
    std::array<Point, 16> table;
    table[0] = identity();
    for (std::size_t i = 1; i < 16; ++i) table[i] = table[i - 1] + *this;
    const std::size_t bits = detail::bit_length(k);
    Point acc;
    for (std::size_t w = (bits + 3) / 4; w-- > 0;) {
      acc = acc.doubled().doubled().doubled().doubled();
      const std::size_t idx = (k[(4 * w) / 64] >> ((4 * w) % 64)) & 0xF;
      if (idx != 0) acc += table[idx];
    }
    return acc;
  }

  friend Point operator*(const Point& p, const Fr& s) { return p.mul_limbs(s.to_canonical()); }
  friend Point operator*(const Fr& s, const Point& p) { return p * s; }
  Point& operator*=(const Fr& s) { return *this = *this * s; }

  /// r * P == O
  bool in_subgroup() const { return mul_limbs(Fr::kModulus).is_identity(); }

  AffinePoint<F> to_affine() const {
    if (is_identity()) return {};
    const F zinv = z.inverse();
    const F zinv2 = zinv.square();
    return {x * zinv2, y * zinv2 * zinv, false};
  }
};

struct G1Traits {
  using Field = Fp;
  static Fp b();
  static Point<G1Traits> generator();
};

struct G2Traits {
  using Field = Fp2;
  static Fp2 b();
  static Point<G2Traits> generator();
};

using G1 = Point<G1Traits>;
using G2 = Point<G2Traits>;
using G1Affine = AffinePoint<Fp>;
using G2Affine = AffinePoint<Fp2>;

inline constexpr std::size_t kG1CompressedSize = 48;
inline constexpr std::size_t kG2CompressedSize = 96;

using G1Bytes = std::array<std::uint8_t, kG1CompressedSize>;
using G2Bytes = std::array<std::uint8_t, kG2CompressedSize>;

/// Compressed big-endian encodings with the top three bits of the first
/// byte as flags (compressed, infinity, y-sign).
G1Bytes encode_g1(const G1& p);
G2Bytes encode_g2(const G2& p);

/// Rejects non-canonical coordinates, off-curve and out-of-subgroup points.
G1 decode_g1(std::span<const std::uint8_t> bytes);
G2 decode_g2(std::span<const std::uint8_t> bytes);

/// Deterministic try-and-increment map into the prime-order subgroup of G1.
G1 hash_to_g1(std::string_view domain, std::span<const std::uint8_t> seed, std::uint64_t index);

}  // namespace didm::crypto
