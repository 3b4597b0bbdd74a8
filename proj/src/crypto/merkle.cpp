// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/crypto/merkle.hpp"

#include <stdexcept>

namespace didm::crypto {

Digest merkle_leaf(const HashParams& pp, const Digest& leaf) {
  return crh_val(pp, "mrk-leaf", std::span<const Fr>(&leaf, 1));
}

Digest merkle_node(const HashParams& pp, const Digest& left, const Digest& right) {
  const std::array<Fr, 2> pair{left, right};
  return crh_val(pp, "mrk-node", std::span<const Fr>(pair));
}

MerkleTree::MerkleTree(const HashParams& pp, std::span<const Digest> leaves) {
  if (leaves.empty()) throw std::invalid_argument("merkle tree needs at least one leaf");
  std::vector<Digest> level(leaves.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(leaves.size()); ++i) {
    level[static_cast<std::size_t>(i)] = merkle_leaf(pp, leaves[static_cast<std::size_t>(i)]);
  }
  levels_.push_back(std::move(level));
  while (levels_.back().size() > 1) {
    const auto& cur = levels_.back();
    std::vector<Digest> next((cur.size() + 1) / 2);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(next.size()); ++i) {
      const auto k = static_cast<std::size_t>(i);
      const Digest& l = cur[2 * k];
      const Digest& r = 2 * k + 1 < cur.size() ? cur[2 * k + 1] : l;
      next[k] = merkle_node(pp, l, r);
    }
    levels_.push_back(std::move(next));
  }
}

std::vector<Digest> MerkleTree::prove(std::size_t index) const {
  if (index >= leaf_count()) throw std::out_of_range("merkle leaf index out of range");
  std::vector<Digest> path;
  for (std::size_t h = 0; h + 1 < levels_.size(); ++h) {
    const auto& lvl = levels_[h];
    const std::size_t sib = index ^ 1U;
    path.push_back(sib < lvl.size() ? lvl[sib] : lvl[index]);
    index >>= 1;
  }
  return path;
}

Digest merkle_root(const HashParams& pp, std::span<const Digest> leaves) { return MerkleTree(pp, leaves).root(); }

Digest merkle_root_serial(const HashParams& pp, std::span<const Digest> leaves) {
  if (leaves.empty()) throw std::invalid_argument("merkle tree needs at least one leaf");
  std::vector<Digest> level;
  level.reserve(leaves.size());
  for (const auto& l : leaves) level.push_back(merkle_leaf(pp, l));
  while (level.size() > 1) {
    std::vector<Digest> next;
    for (std::size_t k = 0; k < level.size(); k += 2) {
      next.push_back(merkle_node(pp, level[k], k + 1 < level.size() ? level[k + 1] : level[k]));
    }
    level = std::move(next);
  }
  return level.front();
}

std::vector<Digest> merkle_prove(const HashParams& pp, std::span<const Digest> leaves, std::size_t index) {
  return MerkleTree(pp, leaves).prove(index);
}

bool merkle_verify(const HashParams& pp, const Digest& root, const Digest& leaf, std::size_t index,
                   std::span<const Digest> path) {
  Digest acc = merkle_leaf(pp, leaf);
  for (const auto& sib : path) {
    acc = (index & 1U) != 0 ? merkle_node(pp, sib, acc) : merkle_node(pp, acc, sib);
    index >>= 1;
  }
  return index == 0 && acc == root;
}

}  // namespace didm::crypto
