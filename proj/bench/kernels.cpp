// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

#include "didm/crypto/merkle.hpp"
#include "didm/crypto/msm.hpp"
#include "didm/crypto/pairing.hpp"
#include "didm/crypto/prng.hpp"
#include "didm/forge/forge.hpp"
#include "didm/predicates/predicates.hpp"

namespace {

using namespace didm;

struct MsmInput {
  std::vector<crypto::G1> points;
  std::vector<crypto::Fr> scalars;
};

MsmInput msm_input(std::size_t n) {
  crypto::SeedStream s("A2DIDM/bench-msm", u64_bytes(n));
  MsmInput in;
  const auto g = crypto::G1::generator();
  for (std::size_t i = 0; i < n; ++i) {
    in.points.push_back(g * s.next_scalar());
    in.scalars.push_back(s.next_scalar());
  }
  return in;
}

void threads(benchmark::State& state) { state.counters["threads"] = omp_get_max_threads(); }

void BM_Msm(benchmark::State& state) {
  const auto in = msm_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crypto::msm(in.points, in.scalars));
  threads(state);
}

void BM_MsmSerial(benchmark::State& state) {
  const auto in = msm_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crypto::msm_serial(in.points, in.scalars));
}

const checkpoint::CheckpointSequence& toy_sequence() {
  static const auto seq = forge::ToyScenario{}.clean(11);
  return seq;
}

void BM_Cwcd(benchmark::State& state) {
  const auto& seq = toy_sequence();
  const auto cfg = predicates::PredicateConfig::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(predicates::eval_cwcd(seq, cfg, 5).value);
  threads(state);
}

void BM_CwcdSerial(benchmark::State& state) {
  const auto& seq = toy_sequence();
  const auto cfg = predicates::PredicateConfig::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(predicates::eval_cwcd_serial(seq, cfg, 5).value);
}

std::vector<crypto::Digest> merkle_leaves(std::size_t n) {
  crypto::SeedStream s("A2DIDM/bench-mrk", u64_bytes(n));
  std::vector<crypto::Digest> out(n);
  for (auto& d : out) d = s.next_scalar();
  return out;
}

const crypto::HashParams& sponge() {
  static const auto hp = crypto::HashParams::generate(to_bytes("bench"));
  return hp;
}

void BM_Merkle(benchmark::State& state) {
  const auto leaves = merkle_leaves(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crypto::merkle_root(sponge(), leaves));
  threads(state);
}

void BM_MerkleSerial(benchmark::State& state) {
  const auto leaves = merkle_leaves(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crypto::merkle_root_serial(sponge(), leaves));
}

crypto::Fp12 miller_value() {
  crypto::SeedStream s("A2DIDM/bench-pair", to_bytes("fexp"));
  return crypto::miller_loop(crypto::G1::generator() * s.next_scalar(), crypto::G2::generator() * s.next_scalar());
}

void BM_FinalExp(benchmark::State& state) {
  const auto f = miller_value();
  for (auto _ : state) benchmark::DoNotOptimize(crypto::final_exponentiation(f));
}

void BM_FinalExpReference(benchmark::State& state) {
  const auto f = miller_value();
  for (auto _ : state) benchmark::DoNotOptimize(crypto::final_exponentiation_reference(f));
}

BENCHMARK(BM_Msm)->Arg(16)->Arg(64)->Arg(118)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MsmSerial)->Arg(16)->Arg(64)->Arg(118)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cwcd)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CwcdSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Merkle)->Arg(21)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MerkleSerial)->Arg(21)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FinalExp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FinalExpReference)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
