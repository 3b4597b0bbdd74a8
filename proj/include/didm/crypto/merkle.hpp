// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "didm/crypto/hash.hpp"

namespace didm::crypto {

/// Binary tree; an odd level duplicates its last node. Leaves are hashed
/// under their own tag, so a one-leaf tree has root crh(tag || leaf).
class MerkleTree {
 public:
  MerkleTree(const HashParams& pp, std::span<const Digest> leaves);

  const Digest& root() const { return levels_.back().front(); }
  std::size_t height() const { return levels_.size() - 1; }
  std::size_t leaf_count() const { return levels_.front().size(); }

  /// Sibling digests from the leaf level upward; length = height().
  std::vector<Digest> prove(std::size_t index) const;

 private:
  std::vector<std::vector<Digest>> levels_;
};

Digest merkle_leaf(const HashParams& pp, const Digest& leaf);
Digest merkle_node(const HashParams& pp, const Digest& left, const Digest& right);

Digest merkle_root(const HashParams& pp, std::span<const Digest> leaves);
/// Reference: same tree built level by level on one thread.
Digest merkle_root_serial(const HashParams& pp, std::span<const Digest> leaves);
std::vector<Digest> merkle_prove(const HashParams& pp, std::span<const Digest> leaves, std::size_t index);
bool merkle_verify(const HashParams& pp, const Digest& root, const Digest& leaf, std::size_t index,
                   std::span<const Digest> path);

}  // namespace didm::crypto
