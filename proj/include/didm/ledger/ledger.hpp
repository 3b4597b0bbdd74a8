// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "didm/protocol/protocol.hpp"

namespace didm::ledger {

using crypto::Digest;
using protocol::Commitment;

inline constexpr std::string_view kTagTransaction{"LEDGERTX", 8};

struct Transaction {
  Digest ledger_digest;
  std::vector<Commitment> cp_list;
  Commitment pcp;
  protocol::OuterProof pi_out;
  pcs::AccumulatorValue accu;
  pcs::AccumulatorProof pi_acs;
  Commitment submitter;
  Digest nonce;

  protocol::OuterStatement statement() const { return {pcp, submitter, cp_list}; }

  Bytes encode() const;
  static Transaction decode(std::span<const std::uint8_t> bytes);
};

/// Ledger leaf of one commitment.
Digest cp_leaf(const crypto::HashParams& hp, const Commitment& cp);

/// Hash of every field except the nonce itself.
Digest tx_nonce(const crypto::HashParams& hp, const Transaction& tx);

/// Throws protocol::ProtocolError if the components do not verify locally.
Transaction build_transaction(const protocol::PublicParams& pp, const protocol::VerifyingKey& vk,
                              std::vector<Commitment> cp_list, const Commitment& pcp,
                              const protocol::OuterProof& pi_out, const pcs::AccumulatorValue& accu,
                              const pcs::AccumulatorProof& pi_acs, const Commitment& irpk,
                              std::span<const Digest> prior_leaves);

Digest tx_digest(const crypto::HashParams& hp, std::span<const std::uint8_t> encoded);

/// Digest check, nonce check and protocol verify. Pure.
bool verify_tx(const protocol::PublicParams& pp, const protocol::VerifyingKey& vk, const Transaction& tx,
               std::span<const Digest> prior_leaves, crypto::OpCounters* ops = nullptr);

enum class RejectReason : std::uint8_t { kNone = 0, kReplay, kClaimed, kInvalid };
const char* reject_reason_name(RejectReason r);

struct Receipt {
  std::uint64_t height = 0;  // height of the new block; 0 if rejected
  std::uint64_t timestamp = 0;
  Digest tx_digest;
  bool accepted = false;
  RejectReason reason = RejectReason::kNone;
  bool replay() const { return reason == RejectReason::kReplay; }
};

struct Block {
  std::uint64_t height = 0;
  std::uint64_t timestamp = 0;
  Digest tx_digest;
  Transaction tx;
};

struct LedgerStats {
  std::uint64_t submissions = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected_invalid = 0;
  std::uint64_t rejected_replay = 0;
  std::uint64_t rejected_claimed = 0;
  std::uint64_t leaves = 0;
  std::uint64_t truncated_records_dropped = 0;
  crypto::OpCounters ops;
  std::chrono::nanoseconds verify_time{0};
};

/// Single sequencer with a logical clock. Blocks are never modified once
/// appended; heights start at 1.
class Ledger {
 public:
  Ledger(protocol::PublicParams pp, protocol::VerifyingKey vk);

  /// Opens or creates a journal and replays it. A truncated final record
  /// (interrupted append) is dropped; any other damage throws DecodeError.
  Ledger(protocol::PublicParams pp, protocol::VerifyingKey vk, const std::filesystem::path& journal);

  Receipt submit(const Transaction& tx);

  /// Re-runs verify_tx for the block at `height` against the leaves before it.
  bool verify_block(std::uint64_t height) const;

  std::uint64_t height() const;
  const std::vector<Block>& blocks() const { return blocks_; }
  std::vector<Digest> leaves() const;
  /// Zero for an empty ledger.
  Digest root() const;
  LedgerStats stats() const;

 private:
  Receipt apply(const Transaction& tx, const Bytes& encoded, bool persist);

  protocol::PublicParams pp_;
  protocol::VerifyingKey vk_;
  std::optional<std::filesystem::path> journal_;
  mutable std::mutex mu_;
  std::vector<Block> blocks_;
  std::vector<Digest> leaves_;
  std::vector<std::size_t> leaf_offsets_;  // leaves_ size before each block
  std::unordered_set<std::string> nonces_;
  std::unordered_set<std::string> claimed_;
  std::uint64_t clock_ = 0;
  LedgerStats stats_;
};

}  // namespace didm::ledger
