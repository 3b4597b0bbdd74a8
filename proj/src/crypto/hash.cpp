// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/crypto/hash.hpp"

#include <stdexcept>

#include "didm/crypto/msm.hpp"
#include "didm/crypto/prng.hpp"

namespace didm::crypto {
namespace {

Fr sbox(const Fr& x) {
  const Fr x2 = x.square();
  return x2.square() * x;
}

Fr tag_scalar(std::string_view context) {
  const auto tag = domain_tag(context);
  std::array<std::uint8_t, 32> le{};
  std::copy(tag.begin(), tag.end(), le.begin());
  return *Fr::from_bytes_le(le);
}

Digest sponge(const HashParams& pp, std::span<const Fr> input) {
  std::array<Fr, HashParams::kWidth> state{};
  state[0] = Fr::from_u64(input.size());
  for (std::size_t i = 0; i < input.size(); i += HashParams::kRate) {
    state[1] += input[i];
    if (i + 1 < input.size()) state[2] += input[i + 1];
    pp.permute(state);
  }
  if (input.empty()) pp.permute(state);
  return state[1];
}

// Chained Pedersen hash: each block is c_prev*H_0 + sum m_j H_{j+1}, and the
// compressed result is reduced into the scalar field as the next chain value.
Digest group_hash(const HashParams& pp, std::span<const Fr> input) {
  const auto& gens = pp.group_generators();
  const std::size_t per_block = gens.size() - 1;
  Fr chain = Fr::from_u64(input.size());
  std::size_t pos = 0;
  do {
    const std::size_t take = std::min(per_block, input.size() - pos);
    std::vector<Fr> scalars{chain};
    scalars.insert(scalars.end(), input.begin() + static_cast<std::ptrdiff_t>(pos),
                   input.begin() + static_cast<std::ptrdiff_t>(pos + take));
    const G1 p = msm_serial(std::span(gens).first(scalars.size()), scalars);
    chain = Fr::from_bytes_reduce(encode_g1(p));
    pos += take;
  } while (pos < input.size());
  return chain;
}

}  // namespace

Digest digest_from_bytes(std::span<const std::uint8_t> bytes) {
  auto d = Fr::from_bytes_le(bytes);
  if (!d) throw DecodeError("digest is not a canonical scalar");
  return *d;
}

std::array<std::uint8_t, kDomainTagSize> domain_tag(std::string_view context) {
  constexpr std::string_view kPrefix = "A2DIDM/";
  if (context.size() > kDomainTagSize - kPrefix.size()) throw std::invalid_argument("domain context too long");
  std::array<std::uint8_t, kDomainTagSize> tag{};
  std::copy(kPrefix.begin(), kPrefix.end(), tag.begin());
  std::copy(context.begin(), context.end(), tag.begin() + kPrefix.size());
  return tag;
}

HashParams HashParams::generate(std::span<const std::uint8_t> seed, HashVariant variant) {
  HashParams pp;
  pp.variant_ = variant;
  pp.seed_.assign(seed.begin(), seed.end());

  SeedStream rc("A2DIDM/hash-rc", seed);
  pp.round_constants_.resize((kFullRounds + kPartialRounds) * kWidth);
  for (auto& c : pp.round_constants_) c = rc.next_scalar();

  // Cauchy matrix 1/(x_i + y_j), x_i = i, y_j = t + j; all sums distinct and nonzero.
  for (std::size_t i = 0; i < kWidth; ++i) {
    for (std::size_t j = 0; j < kWidth; ++j) {
      pp.mds_[i][j] = Fr::from_u64(i + kWidth + j).inverse();
    }
  }

  if (variant == HashVariant::kGroup) {
    pp.group_gens_.reserve(kGroupGenerators);
    for (std::size_t i = 0; i < kGroupGenerators; ++i) pp.group_gens_.push_back(hash_to_g1("A2DIDM/hash-gen", seed, i));
  }
  return pp;
}

void HashParams::permute(std::array<Fr, kWidth>& state) const {
  const std::size_t half = kFullRounds / 2;
  const std::size_t rounds = kFullRounds + kPartialRounds;
  for (std::size_t r = 0; r < rounds; ++r) {
    for (std::size_t i = 0; i < kWidth; ++i) state[i] += round_constants_[r * kWidth + i];
    if (r < half || r >= half + kPartialRounds) {
      for (auto& s : state) s = sbox(s);
    } else {
      state[0] = sbox(state[0]);
    }
    std::array<Fr, kWidth> next{};
    for (std::size_t i = 0; i < kWidth; ++i) {
      for (std::size_t j = 0; j < kWidth; ++j) next[i] += mds_[i][j] * state[j];
    }
    state = next;
  }
}

Digest crh_val(const HashParams& pp, std::string_view context, std::span<const Fr> msg) {
  std::vector<Fr> input;
  input.reserve(msg.size() + 1);
  input.push_back(tag_scalar(context));
  input.insert(input.end(), msg.begin(), msg.end());
  if (pp.variant() == HashVariant::kGroup) return group_hash(pp, input);
  return sponge(pp, input);
}

Digest crh_val(const HashParams& pp, std::string_view context, std::span<const std::uint8_t> msg) {
  const auto packed = pack_bytes(msg);
  return crh_val(pp, context, std::span<const Fr>(packed));
}

std::vector<Fr> pack_bytes(std::span<const std::uint8_t> msg) {
  constexpr std::size_t kChunk = 31;
  std::vector<Fr> out;
  out.reserve(1 + (msg.size() + kChunk - 1) / kChunk);
  out.push_back(Fr::from_u64(msg.size()));
  for (std::size_t i = 0; i < msg.size(); i += kChunk) {
    std::array<std::uint8_t, 32> le{};
    const std::size_t n = std::min(kChunk, msg.size() - i);
    std::copy_n(msg.begin() + static_cast<std::ptrdiff_t>(i), n, le.begin());
    out.push_back(*Fr::from_bytes_le(le));
  }
  return out;
}

}  // namespace didm::crypto
