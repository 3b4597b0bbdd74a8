// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/crypto/curve.hpp"

#include <algorithm>

#include "didm/crypto/prng.hpp"

namespace didm::crypto {
namespace {

constexpr auto kModulus = FpParams::kModulus;
constexpr Limbs<6> kPMinus3Over4 = detail::shift_right1(detail::shift_right1(detail::sub_small(kModulus, 3)));
constexpr Limbs<6> kPMinus1Over2 = detail::shift_right1(detail::sub_small(kModulus, 1));

// h1 = (x - 1)^2 / 3 for the curve parameter x = -0xd201000000010000
constexpr Limbs<2> kG1Cofactor = detail::parse_hex<2>("0x396c8c005555e1568c00aaab0000aaab");

constexpr std::uint8_t kFlagCompressed = 0x80;
constexpr std::uint8_t kFlagInfinity = 0x40;
constexpr std::uint8_t kFlagSign = 0x20;

Fp fp_hex(std::string_view hex) {
  auto v = Fp::from_canonical(detail::parse_hex<6>(hex));
  if (!v) throw std::logic_error("bad field constant");
  return *v;
}

void write_fp_be(const Fp& v, std::uint8_t* out) {
  const auto be = v.to_bytes_be();
  std::copy(be.begin(), be.end(), out);
}

Fp read_fp_be(std::span<const std::uint8_t> in, bool mask_flags) {
  std::array<std::uint8_t, 48> buf{};
  std::copy(in.begin(), in.begin() + 48, buf.begin());
  if (mask_flags) buf[0] &= 0x1F;
  auto v = Fp::from_bytes_be(buf);
  if (!v) throw EncodingError("coordinate not in canonical range");
  return *v;
}

struct Flags {
  bool infinity;
  bool sign;
};

Flags read_flags(std::span<const std::uint8_t> bytes, std::size_t size) {
  if (bytes.size() != size) throw EncodingError("wrong point encoding length");
  const std::uint8_t f = bytes[0];
  if ((f & kFlagCompressed) == 0) throw EncodingError("point encoding not compressed");
  const bool inf = (f & kFlagInfinity) != 0;
  const bool sign = (f & kFlagSign) != 0;
  if (inf) {
    if (sign || (f & 0x1F) != 0 || !std::all_of(bytes.begin() + 1, bytes.end(), [](auto b) { return b == 0; })) {
      throw EncodingError("non-canonical point at infinity");
    }
  }
  return {inf, sign};
}

}  // namespace

std::optional<Fp2> Fp2::sqrt() const {
  // p = 3 mod 4 square root in Fp2 (Adj and Rodriguez-Henriquez, Alg. 9)
  const Fp2 a1 = pow(kPMinus3Over4);
  const Fp2 alpha = a1 * (a1 * *this);
  const Fp2 a0 = alpha.conjugate() * alpha;
  const Fp2 minus_one = -Fp2::one();
  if (a0 == minus_one) return std::nullopt;
  const Fp2 x0 = a1 * *this;
  Fp2 x;
  if (alpha == minus_one) {
    x = Fp2{-x0.c1, x0.c0};
  } else {
    x = (alpha + Fp2::one()).pow(kPMinus1Over2) * x0;
  }
  if (!(x.square() == *this)) return std::nullopt;
  return x;
}

Fp G1Traits::b() {
  static const Fp b = Fp::from_u64(4);
  return b;
}

G1 G1Traits::generator() {
  static const G1 g = G1::from_affine(
      fp_hex("0x17f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb"),
      fp_hex("0x08b3f481e3aaa0f1a09e30ed741d8ae4fcf5e095d5d00af600db18cb2c04b3edd03cc744a2888ae40caa232946c5e7e1"));
  return g;
}

Fp2 G2Traits::b() {
  static const Fp2 b{Fp::from_u64(4), Fp::from_u64(4)};
  return b;
}

G2 G2Traits::generator() {
  static const G2 g = G2::from_affine(
      Fp2{fp_hex("0x024aa2b2f08f0a91260805272dc51051c6e47ad4fa403b02b4510b647ae3d1770bac0326a805bbefd48056c8c121bdb8"),
          fp_hex("0x13e02b6052719f607dacd3a088274f65596bd0d09920b61ab5da61bbdc7f5049334cf11213945d57e5ac7d055d042b7e")},
      Fp2{fp_hex("0x0ce5d527727d6e118cc9cdc6da2e351aadfd9baa8cbdd3a76d429a695160d12c923ac9cc3baca289e193548608b82801"),
          fp_hex("0x0606c4a02ea734cc32acd2b02bc28b99cb3e287e85a763af267492ab572e99ab3f370d275cec1da1aaa9075ff05f79be")});
  return g;
}

G1Bytes encode_g1(const G1& p) {
  G1Bytes out{};
  if (p.is_identity()) {
    out[0] = kFlagCompressed | kFlagInfinity;
    return out;
  }
  const auto a = p.to_affine();
  write_fp_be(a.x, out.data());
  out[0] |= kFlagCompressed;
  if (a.y.lexicographically_largest()) out[0] |= kFlagSign;
  return out;
}

G2Bytes encode_g2(const G2& p) {
  G2Bytes out{};
  if (p.is_identity()) {
    out[0] = kFlagCompressed | kFlagInfinity;
    return out;
  }
  const auto a = p.to_affine();
  write_fp_be(a.x.c1, out.data());
  write_fp_be(a.x.c0, out.data() + 48);
  out[0] |= kFlagCompressed;
  if (a.y.lexicographically_largest()) out[0] |= kFlagSign;
  return out;
}

G1 decode_g1(std::span<const std::uint8_t> bytes) {
  const Flags f = read_flags(bytes, kG1CompressedSize);
  if (f.infinity) return G1::identity();
  const Fp x = read_fp_be(bytes, true);
  auto y = (x.square() * x + G1Traits::b()).sqrt();
  if (!y) throw EncodingError("G1 x-coordinate not on curve");
  if (y->lexicographically_largest() != f.sign) *y = -*y;
  const G1 p = G1::from_affine(x, *y);
  if (!p.in_subgroup()) throw EncodingError("G1 point outside prime-order subgroup");
  return p;
}

G2 decode_g2(std::span<const std::uint8_t> bytes) {
  const Flags f = read_flags(bytes, kG2CompressedSize);
  if (f.infinity) return G2::identity();
  const Fp x1 = read_fp_be(bytes.subspan(0, 48), true);
  const Fp x0 = read_fp_be(bytes.subspan(48, 48), false);
  const Fp2 x{x0, x1};
  auto y = (x.square() * x + G2Traits::b()).sqrt();
  if (!y) throw EncodingError("G2 x-coordinate not on curve");
  if (y->lexicographically_largest() != f.sign) *y = -*y;
  const G2 p = G2::from_affine(x, *y);
  if (!p.in_subgroup()) throw EncodingError("G2 point outside prime-order subgroup");
  return p;
}

G1 hash_to_g1(std::string_view domain, std::span<const std::uint8_t> seed, std::uint64_t index) {
  ByteWriter w;
  w.prefixed(seed);
  w.u64(index);
  SeedStream stream(domain, w.data());
  for (;;) {
    const auto block = stream.next_block();
    const Fp x = Fp::from_bytes_reduce(block);
    auto y = (x.square() * x + G1Traits::b()).sqrt();
    if (!y) continue;
    if (((block[63] & 1U) != 0) != y->lexicographically_largest()) *y = -*y;
    const G1 p = G1::from_affine(x, *y).mul_limbs(kG1Cofactor);
    if (!p.is_identity()) return p;
  }
}

}  // namespace didm::crypto
