#include <vector>

#include "didm/crypto/curve.hpp"
#include "didm/crypto/msm.hpp"
#include "didm/crypto/pairing.hpp"
#include "didm/crypto/prng.hpp"
#include "doctest.h"

using namespace didm;
using namespace didm::crypto;

namespace {

std::vector<Fr> scalars(std::string_view label, std::size_t n) {
  SeedStream s(label, to_bytes("test"));
  std::vector<Fr> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(s.next_scalar());
  return out;
}

}  // namespace

TEST_CASE("field arithmetic basics") {
  const auto xs = scalars("fp", 50);
  for (const auto& a : xs) {
    CHECK(a * a.inverse() == (a.is_zero() ? Fr::zero() : Fr::one()));
    CHECK(a - a == Fr::zero());
    CHECK(-(-a) == a);
    CHECK(Fr::from_bytes_le(a.to_bytes_le()).value() == a);
  }
  CHECK(Fr::from_i64(-3) + Fr::from_u64(3) == Fr::zero());
  CHECK(Fp::from_u64(4).sqrt().value().square() == Fp::from_u64(4));
}

TEST_CASE("generators are on the curve and have order r") {
  CHECK(G1::generator().is_on_curve());
  CHECK(G2::generator().is_on_curve());
  CHECK(G1::generator().in_subgroup());
  CHECK(G2::generator().in_subgroup());
  CHECK_FALSE(G1::generator().is_identity());
}

TEST_CASE("group law") {
  const auto ks = scalars("grp", 6);
  const G1 g = G1::generator();
  CHECK(g * (ks[0] + ks[1]) == g * ks[0] + g * ks[1]);
  CHECK((g * ks[0]) * ks[1] == g * (ks[0] * ks[1]));
  CHECK(g - g == G1::identity());
  CHECK(g + g == g.doubled());
  const G2 h = G2::generator();
  CHECK(h * (ks[2] + ks[3]) == h * ks[2] + h * ks[3]);
}

TEST_CASE("compressed encoding round-trip") {
  const auto ks = scalars("enc", 10);
  for (const auto& k : ks) {
    const G1 p = G1::generator() * k;
    CHECK(decode_g1(encode_g1(p)) == p);
    const G2 q = G2::generator() * k;
    CHECK(decode_g2(encode_g2(q)) == q);
  }
  CHECK(decode_g1(encode_g1(G1::identity())).is_identity());
  CHECK(decode_g2(encode_g2(G2::identity())).is_identity());
  // generator encoding is the published constant
  CHECK(to_hex(encode_g1(G1::generator())).substr(0, 8) == "97f1d3a7");
  CHECK(to_hex(encode_g2(G2::generator())).substr(0, 8) == "93e02b60");
}

TEST_CASE("decode rejects malformed points") {
  auto b = encode_g1(G1::generator());
  auto uncompressed = b;
  uncompressed[0] &= 0x7F;
  CHECK_THROWS_AS(decode_g1(uncompressed), EncodingError);
  auto big = b;
  for (std::size_t i = 1; i < big.size(); ++i) big[i] = 0xFF;
  big[0] = 0x9F;
  CHECK_THROWS_AS(decode_g1(big), EncodingError);
  // find an x on the curve whose point is outside the subgroup
  bool found = false;
  for (std::uint64_t x = 1; x < 200 && !found; ++x) {
    const Fp fx = Fp::from_u64(x);
    auto y = (fx.square() * fx + G1Traits::b()).sqrt();
    if (!y) continue;
    const G1 p = G1::from_affine(fx, *y);
    if (p.in_subgroup()) continue;
    G1Bytes e{};
    const auto be = fx.to_bytes_be();
    std::copy(be.begin(), be.end(), e.begin());
    e[0] |= 0x80;
    if (y->lexicographically_largest()) e[0] |= 0x20;
    CHECK_THROWS_AS(decode_g1(e), EncodingError);
    found = true;
  }
  CHECK(found);
  CHECK_THROWS_AS(decode_g1(std::span<const std::uint8_t>(b.data(), 47)), EncodingError);
}

TEST_CASE("hash_to_g1 is deterministic and in the subgroup") {
  const auto seed = to_bytes("seed");
  const G1 a = hash_to_g1("dom", seed, 0);
  CHECK(a == hash_to_g1("dom", seed, 0));
  CHECK_FALSE(a == hash_to_g1("dom", seed, 1));
  CHECK_FALSE(a == hash_to_g1("other", seed, 0));
  CHECK(a.in_subgroup());
}

TEST_CASE("pairing is bilinear and non-degenerate") {
  const auto ks = scalars("pair", 2);
  const G1 g = G1::generator();
  const G2 h = G2::generator();
  const Fp12 e = pairing(g, h);
  CHECK_FALSE(e.is_one());
  CHECK(e.pow(Fr::kModulus).is_one());
  CHECK(pairing(g * ks[0], h * ks[1]) == pairing(g * (ks[0] * ks[1]), h));
  CHECK(pairing(g * ks[0], h) == pairing(g, h * ks[0]));
  std::vector<std::pair<G1, G2>> terms{{g * ks[0], h}, {-g, h * ks[0]}};
  OpCounters ops;
  CHECK(pairing_product_is_one(terms, &ops));
  CHECK(ops.miller_loops == 2);
  CHECK(ops.pairing_checks() == 1);
  terms[1].first = g;
  CHECK_FALSE(pairing_product_is_one(terms));
}

TEST_CASE("msm matches the serial reference") {
  for (std::size_t n : {0U, 1U, 5U, 40U, 130U}) {
    const auto ks = scalars("msm-s", n);
    std::vector<G1> ps;
    for (std::size_t i = 0; i < n; ++i) ps.push_back(hash_to_g1("msm", to_bytes("p"), i));
    CHECK(msm(ps, ks) == msm_serial(ps, ks));
  }
}

TEST_CASE("final exponentiation matches the direct power") {
  const auto ks = scalars("fexp", 2);
  const Fp12 f = miller_loop(G1::generator() * ks[0], G2::generator() * ks[1]);
  CHECK(final_exponentiation(f) == final_exponentiation_reference(f));
  const Fp12 g = f * miller_loop(G1::generator(), G2::generator());
  CHECK(final_exponentiation(g) == final_exponentiation_reference(g));
}
