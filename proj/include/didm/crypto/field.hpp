// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "didm/crypto/limbs.hpp"

namespace didm::crypto {

/// Prime field element in Montgomery form. `P` supplies kLimbs and kModulus.
template <class P>
class MontField {
 public:
  static constexpr std::size_t kLimbs = P::kLimbs;
  using Repr = Limbs<kLimbs>;
  static constexpr Repr kModulus = P::kModulus;
  static constexpr std::uint64_t kInv = detail::mont_inv(P::kModulus[0]);
  static constexpr Repr kR = detail::pow2_mod(P::kModulus, 64 * kLimbs);
  static constexpr Repr kR2 = detail::pow2_mod(P::kModulus, 128 * kLimbs);
  static constexpr std::size_t kBits = detail::bit_length(P::kModulus);
  static constexpr std::size_t kBytes = (kBits + 7) / 8;

  constexpr MontField() = default;

  static MontField zero() { return MontField(); }
  static MontField one() { return from_mont(kR); }

  static MontField from_u64(std::uint64_t v) {
    Repr r{};
    r[0] = v;
    return from_mont(mont_mul(r, kR2));
  }

  static MontField from_i64(std::int64_t v) {
    if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
    // two's complement magnitude; avoids UB on INT64_MIN
    const auto mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
    return -from_u64(mag);
  }

  /// Accepts only the canonical range [0, p).
  static std::optional<MontField> from_canonical(const Repr& v) {
    if (detail::geq(v, kModulus)) return std::nullopt;
    return from_mont(mont_mul(v, kR2));
  }

  /// Interprets arbitrary bytes as a big-endian integer and reduces mod p.
  static MontField from_bytes_reduce(std::span<const std::uint8_t> bytes) {
    static const MontField k256 = from_u64(256);
    MontField acc;
    for (auto b : bytes) acc = acc * k256 + from_u64(b);
    return acc;
  }

  static std::optional<MontField> from_bytes_le(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kBytes) return std::nullopt;
    Repr v{};
    for (std::size_t i = 0; i < kBytes; ++i) {
      v[i / 8] |= static_cast<std::uint64_t>(bytes[i]) << (8 * (i % 8));
    }
    return from_canonical(v);
  }

  static std::optional<MontField> from_bytes_be(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kBytes) return std::nullopt;
    std::array<std::uint8_t, kBytes> le{};
    std::reverse_copy(bytes.begin(), bytes.end(), le.begin());
    return from_bytes_le(le);
  }

  Repr to_canonical() const {
    Repr one{};
    one[0] = 1;
    return mont_mul(v_, one);
  }

  std::array<std::uint8_t, kBytes> to_bytes_le() const {
    const auto c = to_canonical();
    std::array<std::uint8_t, kBytes> out{};
    for (std::size_t i = 0; i < kBytes; ++i) {
      out[i] = static_cast<std::uint8_t>(c[i / 8] >> (8 * (i % 8)));
    }
    return out;
  }

  std::array<std::uint8_t, kBytes> to_bytes_be() const {
    auto le = to_bytes_le();
    std::reverse(le.begin(), le.end());
    return le;
  }

  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s = "0x";
    for (auto b : to_bytes_be()) {
      s.push_back(kDigits[b >> 4]);
      s.push_back(kDigits[b & 15]);
    }
    return s;
  }

  bool is_zero() const { return detail::is_zero(v_); }
  bool is_one() const { return v_ == kR; }

  friend bool operator==(const MontField& a, const MontField& b) { return a.v_ == b.v_; }

  friend MontField operator+(MontField a, const MontField& b) {
    a += b;
    return a;
  }
  friend MontField operator-(MontField a, const MontField& b) {
    a -= b;
    return a;
  }
  friend MontField operator*(const MontField& a, const MontField& b) {
    return from_mont(mont_mul(a.v_, b.v_));
  }
  MontField operator-() const {
    if (is_zero()) return *this;
    Repr r = kModulus;
    detail::sub_in_place(r, v_);
    return from_mont(r);
  }
  MontField& operator+=(const MontField& b) {
    const std::uint64_t carry = detail::add_in_place(v_, b.v_);
    if (carry != 0 || detail::geq(v_, kModulus)) detail::sub_in_place(v_, kModulus);
    return *this;
  }
  MontField& operator-=(const MontField& b) {
    if (detail::sub_in_place(v_, b.v_) != 0) detail::add_in_place(v_, kModulus);
    return *this;
  }
  MontField& operator*=(const MontField& b) {
    v_ = mont_mul(v_, b.v_);
    return *this;
  }

  MontField square() const { return *this * *this; }
  MontField doubled() const { return *this + *this; }

  template <std::size_t M>
  MontField pow(const Limbs<M>& e) const {
    MontField acc = one();
    for (std::size_t i = detail::bit_length(e); i-- > 0;) {
      acc = acc.square();
      if (detail::test_bit(e, i)) acc *= *this;
    }
    return acc;
  }

  /// Zero maps to zero.
  MontField inverse() const { return pow(kModulusMinus2); }

  /// Square root for p = 3 mod 4; nullopt for non-residues.
  std::optional<MontField> sqrt() const
    requires((P::kModulus[0] & 3U) == 3U)
  {
    const MontField s = pow(kSqrtExp);
    if (s.square() == *this) return s;
    return std::nullopt;
  }

  /// True when the canonical value exceeds (p-1)/2.
  bool lexicographically_largest() const {
    const auto c = to_canonical();
    return !detail::geq(kHalfModulus, c);
  }

  const Repr& mont_repr() const { return v_; }

 private:
  static constexpr Repr kModulusMinus2 = detail::sub_small(P::kModulus, 2);
  static constexpr Repr kSqrtExp = detail::shift_right1(detail::shift_right1(detail::add_small(P::kModulus, 1)));
  static constexpr Repr kHalfModulus = detail::shift_right1(P::kModulus);

  static MontField from_mont(const Repr& r) {
    MontField f;
    f.v_ = r;
    return f;
  }

  static Repr mont_mul(const Repr& a, const Repr& b) {
    using detail::u128;
    constexpr std::size_t N = kLimbs;
    std::array<std::uint64_t, N + 2> t{};
    for (std::size_t i = 0; i < N; ++i) {
      u128 c = 0;
      for (std::size_t j = 0; j < N; ++j) {
        c += static_cast<u128>(a[j]) * b[i] + t[j];
        t[j] = static_cast<std::uint64_t>(c);
        c >>= 64;
      }
      c += t[N];
      t[N] = static_cast<std::uint64_t>(c);
      t[N + 1] = static_cast<std::uint64_t>(c >> 64);

      const std::uint64_t m = t[0] * kInv;
      c = static_cast<u128>(m) * kModulus[0] + t[0];
      c >>= 64;
      for (std::size_t j = 1; j < N; ++j) {
        c += static_cast<u128>(m) * kModulus[j] + t[j];
        t[j - 1] = static_cast<std::uint64_t>(c);
        c >>= 64;
      }
      c += t[N];
      t[N - 1] = static_cast<std::uint64_t>(c);
      t[N] = t[N + 1] + static_cast<std::uint64_t>(c >> 64);
    }
    Repr r{};
    std::copy_n(t.begin(), N, r.begin());
    if (t[N] != 0 || detail::geq(r, kModulus)) detail::sub_in_place(r, kModulus);
    return r;
  }

  Repr v_{};
};

struct FpParams {
  static constexpr std::size_t kLimbs = 6;
  static constexpr Limbs<6> kModulus = detail::parse_hex<6>(
      "0x1a0111ea397fe69a4b1ba7b6434bacd764774b84f38512bf6730d2a0f6b0f6241eabfffeb153ffffb9feffffffffaaab");
};

struct FrParams {
  static constexpr std::size_t kLimbs = 4;
  static constexpr Limbs<4> kModulus =
      detail::parse_hex<4>("0x73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001");
};

/// Base field of BLS12-381.
using Fp = MontField<FpParams>;
/// Scalar field (prime group order r).
using Fr = MontField<FrParams>;
using Scalar = Fr;

}  // namespace didm::crypto
