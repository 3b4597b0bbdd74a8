#include "suites.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "didm/checkpoint/checkpoint.hpp"
#include "didm/crypto/commit.hpp"
#include "didm/crypto/merkle.hpp"
#include "didm/crypto/pairing.hpp"
#include "didm/crypto/prng.hpp"
#include "didm/util/rng.hpp"

namespace didm::testing {
namespace {

using checkpoint::Architecture;
using checkpoint::WeightCheckpoint;
using crypto::Fr;
using crypto::G1;
using crypto::G2;

class Recorder {
 public:
  Recorder(std::string name, std::uint32_t trials) { res_.name = std::move(name), res_.trials = trials; }

  void check(bool ok, std::uint32_t trial, const char* what) {
    if (ok) return;
    if (res_.failures++ == 0) {
      std::ostringstream os;
      os << "trial " << trial << ": " << what;
      res_.first_failure = os.str();
    }
  }
  SuiteResult done() { return res_; }

 private:
  SuiteResult res_;
};

Architecture random_arch(Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> width(1, 6);
  std::uniform_int_distribution<int> depth(1, 3);
  std::vector<std::uint32_t> widths(static_cast<std::size_t>(depth(rng)) + 1);
  for (auto& w : widths) w = width(rng);
  return Architecture::mlp(widths);
}

WeightCheckpoint random_checkpoint(const Architecture& arch, Rng& rng, double scale, std::uint32_t epoch = 0) {
  std::normal_distribution<double> nd(0.0, scale);
  std::vector<double> flat(arch.total_params());
  for (auto& v : flat) v = nd(rng);
  return checkpoint::unflatten(arch, flat, epoch);
}

std::vector<Fr> scalars(crypto::SeedStream& s, std::size_t n) {
  std::vector<Fr> out(n);
  for (auto& v : out) v = s.next_scalar();
  return out;
}

}  // namespace

SuiteResult dl_metric_suite(std::uint32_t trials, std::uint64_t seed) {
  Recorder rec("dl_distance metric", trials);
  Rng rng(seed);
  for (std::uint32_t t = 0; t < trials; ++t) {
    const auto arch = random_arch(rng);
    const auto a = random_checkpoint(arch, rng, 1.0);
    const auto b = random_checkpoint(arch, rng, 1.0);
    const auto c = random_checkpoint(arch, rng, 1.0);
    const double ab = checkpoint::dl_distance(a, b);
    const double ba = checkpoint::dl_distance(b, a);
    const double bc = checkpoint::dl_distance(b, c);
    const double ac = checkpoint::dl_distance(a, c);
    rec.check(checkpoint::dl_distance(a, a) == 0.0, t, "d(a, a) != 0");
    rec.check(ab == ba, t, "not symmetric");
    rec.check(ab > 0.0, t, "distinct checkpoints at distance 0");
    rec.check(ac <= ab + bc + 1e-15, t, "triangle inequality");
  }
  return rec.done();
}

SuiteResult quantize_suite(std::uint32_t trials, std::uint64_t seed) {
  Recorder rec("quantize round-trip error", trials);
  Rng rng(seed);
  std::uniform_int_distribution<int> bits(4, 24);
  std::uniform_real_distribution<double> mag(-15.0, 15.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::uint32_t t = 0; t < trials; ++t) {
    const int s = bits(rng);
    std::vector<double> v(16);
    for (auto& x : v) x = unit(rng) * std::exp2(mag(rng));
    const auto back = checkpoint::dequantize(checkpoint::quantize(v, s));
    bool ok = back.size() == v.size();
    for (std::size_t i = 0; ok && i < v.size(); ++i) ok = std::abs(back[i] - v[i]) <= std::exp2(-s - 1);
    rec.check(ok, t, "error exceeds half a quantization step");
  }
  return rec.done();
}

SuiteResult sequence_codec_suite(std::uint32_t trials, std::uint64_t seed) {
  Recorder rec("sequence encode/decode", trials);
  Rng rng(seed);
  std::uniform_int_distribution<std::uint32_t> len(2, 5);
  for (std::uint32_t t = 0; t < trials; ++t) {
    checkpoint::CheckpointSequence seq{random_arch(rng), {}};
    const std::uint32_t n = len(rng);
    for (std::uint32_t e = 0; e < n; ++e) seq.checkpoints.push_back(random_checkpoint(seq.arch, rng, 0.3, e));
    const Bytes bytes = checkpoint::encode_sequence(seq);
    const auto back = checkpoint::decode_sequence(bytes);
    rec.check(back == seq, t, "decoded sequence differs");
    rec.check(checkpoint::encode_sequence(back) == bytes, t, "re-encoding differs");
  }
  return rec.done();
}

SuiteResult group_law_suite(std::uint32_t trials, std::uint64_t seed) {
  Recorder rec("group laws", trials);
  crypto::SeedStream s("A2DIDM/test-grp", u64_bytes(seed));
  const G1 g = G1::generator();
  const G2 h = G2::generator();
  for (std::uint32_t t = 0; t < trials; ++t) {
    const auto k = scalars(s, 5);
    const G1 a = g * k[0];
    const G1 b = g * k[1];
    const G1 c = g * k[2];
    rec.check((a + b) + c == a + (b + c), t, "G1 associativity");
    rec.check(a + G1::identity() == a, t, "G1 identity");
    rec.check((a + -a).is_identity(), t, "G1 inverse");
    rec.check(a + b == b + a, t, "G1 commutativity");
    rec.check((a + b) * k[3] == a * k[3] + b * k[3], t, "G1 distributivity over points");
    rec.check(a * (k[3] + k[4]) == a * k[3] + a * k[4], t, "G1 distributivity over scalars");
    rec.check(a.doubled() == a + a, t, "G1 doubling");

    const G2 p = h * k[0];
    const G2 q = h * k[1];
    rec.check((p + q) + h == p + (q + h), t, "G2 associativity");
    rec.check((p + -p).is_identity(), t, "G2 inverse");
    rec.check((p + q) * k[2] == p * k[2] + q * k[2], t, "G2 distributivity");
  }
  return rec.done();
}

SuiteResult bilinearity_suite(std::uint32_t trials, std::uint64_t seed) {
  Recorder rec("pairing bilinearity", trials);
  crypto::SeedStream s("A2DIDM/test-bil", u64_bytes(seed));
  for (std::uint32_t t = 0; t < trials; ++t) {
    const auto k = scalars(s, 4);
    const G1 p = G1::generator() * k[0];
    const G2 q = G2::generator() * k[1];
    const auto lhs = crypto::pairing(p * k[2], q * k[3]);
    const auto rhs = crypto::pairing(p, q).pow((k[2] * k[3]).to_canonical());
    rec.check(lhs == rhs, t, "e(aP, bQ) != e(P, Q)^(ab)");
  }
  return rec.done();
}

SuiteResult commitment_homomorphism_suite(std::uint32_t trials, std::uint64_t seed) {
  Recorder rec("commitment homomorphism", trials);
  static const auto pp = crypto::CommitParams::generate(to_bytes("test-homomorphism"), 8);
  crypto::SeedStream s("A2DIDM/test-hom", u64_bytes(seed));
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> len(1, 8);
  for (std::uint32_t t = 0; t < trials; ++t) {
    const std::size_t n = len(rng);
    const auto m1 = scalars(s, n);
    const auto m2 = scalars(s, n);
    const Fr r1 = s.next_scalar();
    const Fr r2 = s.next_scalar();
    std::vector<Fr> sum(n);
    for (std::size_t i = 0; i < n; ++i) sum[i] = m1[i] + m2[i];
    const auto lhs = crypto::cs_commit(pp, m1, r1) + crypto::cs_commit(pp, m2, r2);
    rec.check(lhs == crypto::cs_commit(pp, sum, r1 + r2), t, "Com(m1, r1) + Com(m2, r2) != Com(m1 + m2, r1 + r2)");
  }
  return rec.done();
}

SuiteResult merkle_sensitivity_suite(std::uint32_t trials, std::uint64_t seed) {
  Recorder rec("merkle leaf sensitivity", trials);
  static const auto hp = crypto::HashParams::generate(to_bytes("test-merkle"));
  crypto::SeedStream s("A2DIDM/test-mrk", u64_bytes(seed));
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> count(1, 33);
  for (std::uint32_t t = 0; t < trials; ++t) {
    auto leaves = scalars(s, count(rng));
    const auto root = crypto::merkle_root(hp, leaves);
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng);
    leaves[i] = s.next_scalar();
    rec.check(!(crypto::merkle_root(hp, leaves) == root), t, "root unchanged after a leaf mutation");
  }
  return rec.done();
}

}  // namespace didm::testing
