// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace didm::crypto {

template <std::size_t N>
using Limbs = std::array<std::uint64_t, N>;

namespace detail {

using u128 = unsigned __int128;

constexpr int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Little-endian limbs from a big-endian hex literal ("0x" prefix optional).
template <std::size_t N>
constexpr Limbs<N> parse_hex(std::string_view hex) {
  Limbs<N> out{};
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
    if (*it == 'x' || *it == 'X') break;
    const int v = hex_digit(*it);
    if (v < 0) continue;
    out[bit / 64] |= static_cast<std::uint64_t>(v) << (bit % 64);
    bit += 4;
  }
  return out;
}

template <std::size_t N>
constexpr bool geq(const Limbs<N>& a, const Limbs<N>& b) {
  for (std::size_t i = N; i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

template <std::size_t N>
constexpr bool is_zero(const Limbs<N>& a) {
  for (auto x : a) {
    if (x != 0) return false;
  }
  return true;
}

// a += b, returns carry
template <std::size_t N>
constexpr std::uint64_t add_in_place(Limbs<N>& a, const Limbs<N>& b) {
  u128 carry = 0;
  for (std::size_t i = 0; i < N; ++i) {
    carry += static_cast<u128>(a[i]) + b[i];
    a[i] = static_cast<std::uint64_t>(carry);
    carry >>= 64;
  }
  return static_cast<std::uint64_t>(carry);
}

// a -= b, returns borrow
template <std::size_t N>
constexpr std::uint64_t sub_in_place(Limbs<N>& a, const Limbs<N>& b) {
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    a[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1U;
  }
  return borrow;
}

template <std::size_t N>
constexpr Limbs<N> shift_right1(Limbs<N> a) {
  for (std::size_t i = 0; i < N; ++i) {
    a[i] >>= 1;
    if (i + 1 < N) a[i] |= a[i + 1] << 63;
  }
  return a;
}

template <std::size_t N>
constexpr Limbs<N> add_small(Limbs<N> a, std::uint64_t v) {
  Limbs<N> b{};
  b[0] = v;
  add_in_place(a, b);
  return a;
}

template <std::size_t N>
constexpr Limbs<N> sub_small(Limbs<N> a, std::uint64_t v) {
  Limbs<N> b{};
  b[0] = v;
  sub_in_place(a, b);
  return a;
}

template <std::size_t N>
constexpr bool test_bit(const Limbs<N>& a, std::size_t i) {
  return ((a[i / 64] >> (i % 64)) & 1U) != 0;
}

template <std::size_t N>
constexpr std::size_t bit_length(const Limbs<N>& a) {
  for (std::size_t i = N; i-- > 0;) {
    if (a[i] != 0) {
      std::size_t bits = 64;
      while (((a[i] >> (bits - 1)) & 1U) == 0) --bits;
      return i * 64 + bits;
    }
  }
  return 0;
}

// -m^{-1} mod 2^64 via Newton iteration.
constexpr std::uint64_t mont_inv(std::uint64_t m0) {
  std::uint64_t x = 1;
  for (int i = 0; i < 7; ++i) x *= 2 - m0 * x;
  return ~x + 1;
}

// 2^bits mod m by repeated doubling.
template <std::size_t N>
constexpr Limbs<N> pow2_mod(const Limbs<N>& m, std::size_t bits) {
  Limbs<N> r{};
  r[0] = 1;
  for (std::size_t i = 0; i < bits; ++i) {
    const std::uint64_t carry = add_in_place(r, r);
    if (carry != 0 || geq(r, m)) sub_in_place(r, m);
  }
  return r;
}

}  // namespace detail
}  // namespace didm::crypto
