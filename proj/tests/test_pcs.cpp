#include "didm/crypto/prng.hpp"
#include "didm/pcs/accumulator.hpp"
#include "doctest.h"

using namespace didm;
using namespace didm::crypto;
using namespace didm::pcs;

namespace {

const Srs& srs16() {
  static const Srs s = pc_setup(16, to_bytes("srs-test"));
  return s;
}

const HashParams& hp() {
  static const HashParams pp = HashParams::generate(to_bytes("pcs-test"));
  return pp;
}

Polynomial rand_poly(SeedStream& s, std::size_t len) {
  Polynomial p(len);
  for (auto& c : p) c = s.next_scalar();
  return p;
}

std::vector<OpeningInstance> instances(SeedStream& s, std::size_t n, const Fr& z) {
  std::vector<OpeningInstance> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = rand_poly(s, 1 + i % 16);
    const auto o = pc_open(srs16(), p, z);
    out.push_back({pc_commit(srs16(), p), z, o.value, o.proof, static_cast<std::uint32_t>(p.size() - 1)});
  }
  return out;
}

}  // namespace

TEST_CASE("SRS construction") {
  const auto& srs = srs16();
  CHECK(srs.max_degree() == 16);
  CHECK(pc_setup(1, to_bytes("a")).g1_powers.size() == 2);
  CHECK_FALSE(pc_setup(1, to_bytes("a")).g1_powers[1] == pc_setup(1, to_bytes("b")).g1_powers[1]);
  for (std::size_t k : {1U, 7U, 16U}) {
    const std::array<std::pair<G1, G2>, 2> t{{{srs.g1_powers[k], srs.g2_gen}, {-srs.g1_powers[k - 1], srs.g2_tau}}};
    CHECK(pairing_product_is_one(t));
  }
}

TEST_CASE("commit and open") {
  const auto& srs = srs16();
  CHECK(pc_commit(srs, Polynomial{}).is_identity());
  const Fr c = Fr::from_u64(42);
  CHECK(pc_commit(srs, Polynomial{c}) == G1::generator() * c);
  const auto oc = pc_open(srs, Polynomial{c}, Fr::from_u64(9));
  CHECK(oc.value == c);
  CHECK(oc.proof.is_identity());
  const auto ox = pc_open(srs, Polynomial{Fr::zero(), Fr::one()}, Fr::from_u64(3));
  CHECK(ox.value == Fr::from_u64(3));
  CHECK(ox.proof == G1::generator());
  SeedStream s("pcs", to_bytes("x"));
  const auto p = rand_poly(s, 10);
  const auto q = rand_poly(s, 10);
  Polynomial pq(10);
  for (std::size_t i = 0; i < 10; ++i) pq[i] = p[i] + q[i];
  CHECK(pc_commit(srs, p) + pc_commit(srs, q) == pc_commit(srs, pq));
  const Fr z = s.next_scalar();
  const auto o = pc_open(srs, p, z);
  CHECK(o.value == evaluate(p, z));
  CHECK(pc_check(srs, pc_commit(srs, p), z, o.value, o.proof));
  CHECK_FALSE(pc_check(srs, pc_commit(srs, p), z, o.value + Fr::one(), o.proof));
  CHECK_THROWS_AS(pc_commit(srs, rand_poly(s, 18)), std::length_error);
}

TEST_CASE("instance encoding round-trip") {
  SeedStream s("enc", to_bytes("x"));
  const auto qs = instances(s, 1, s.next_scalar());
  ByteWriter w;
  qs[0].encode(w);
  ByteReader r(w.data());
  CHECK(OpeningInstance::decode(r) == qs[0]);
  r.expect_end();
}

TEST_CASE("batching two identical instances with rho = 1") {
  SeedStream s("b2", to_bytes("x"));
  const auto qs = instances(s, 1, s.next_scalar());
  const std::vector<OpeningInstance> two{qs[0], qs[0]};
  const auto b = batch(two, Fr::one());
  CHECK(b.commitment == qs[0].commitment.doubled());
  CHECK(b.value == qs[0].value + qs[0].value);
  CHECK(pc_check(srs16(), b));
  CHECK(batch(std::span(qs).first(1), Fr::from_u64(77)) == qs[0]);
  auto mismatched = two;
  mismatched[1].point += Fr::one();
  CHECK_THROWS(batch(mismatched, Fr::one()));
}

TEST_CASE("accumulation: completeness, folding and op counts") {
  SeedStream s("acs", to_bytes("x"));
  const AcsKeys keys = acs_keygen(srs16());
  const Digest vk = Fr::from_u64(99);
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto qs = instances(s, n, s.next_scalar());
    OpCounters prove_ops;
    const auto [accu, pi] = acs_prove(hp(), keys.apk, qs, vk, std::nullopt, &prove_ops);
    CHECK(prove_ops.miller_loops == 0);
    OpCounters vops;
    CHECK(acs_verify(hp(), keys.avk, vk, qs, std::nullopt, accu, pi, &vops));
    CHECK(vops.miller_loops == 0);
    CHECK(vops.final_exponentiations == 0);
    CHECK(vops.g1_scalar_muls > 0);
    OpCounters dops;
    CHECK(acs_decide(keys.dk, accu, &dops));
    CHECK(dops.pairing_checks() == 1);
    CHECK(accu.encode().size() == 96);

    // second step folds into the first
    const auto qs2 = instances(s, 2, s.next_scalar());
    const auto [accu2, pi2] = acs_prove(hp(), keys.apk, qs2, vk, accu);
    CHECK_FALSE(pi2.rho_hat == Fr::one());
    CHECK(acs_verify(hp(), keys.avk, vk, qs2, accu, accu2, pi2));
    CHECK(acs_decide(keys.dk, accu2));

    AccumulatorValue bad = accu;
    bad.lhs += G1::generator();
    CHECK_FALSE(acs_verify(hp(), keys.avk, vk, qs, std::nullopt, bad, pi));
    CHECK_FALSE(acs_decide(keys.dk, bad));
  }
}

TEST_CASE("accumulation: a corrupted instance is rejected by the decider") {
  SeedStream s("acs-bad", to_bytes("x"));
  const AcsKeys keys = acs_keygen(srs16());
  for (int t = 0; t < 20; ++t) {
    auto qs = instances(s, 3, s.next_scalar());
    qs[static_cast<std::size_t>(t) % 3].value += Fr::one();
    const auto [accu, pi] = acs_prove(hp(), keys.apk, qs, Fr::from_u64(t), std::nullopt);
    CHECK(acs_verify(hp(), keys.avk, Fr::from_u64(t), qs, std::nullopt, accu, pi));
    CHECK_FALSE(acs_decide(keys.dk, accu));
  }
}

TEST_CASE("accumulator encoding round-trip and size") {
  const AccumulatorValue a{G1::generator(), G1::identity()};
  const auto e = a.encode();
  CHECK(AccumulatorValue::decode(e) == a);
  CHECK_THROWS(AccumulatorValue::decode(std::span<const std::uint8_t>(e.data(), 95)));
}
