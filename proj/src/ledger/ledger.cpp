// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/ledger/ledger.hpp"

#include <fstream>

#include "didm/crypto/codec.hpp"
#include "didm/crypto/merkle.hpp"
#include "didm/util/file.hpp"

namespace didm::ledger {

using crypto::read_g1;
using crypto::read_scalar;
using crypto::write_g1;
using crypto::write_scalar;

namespace {

void encode_body(ByteWriter& w, const Transaction& tx, bool with_nonce) {
  write_scalar(w, tx.ledger_digest);
  w.u32(static_cast<std::uint32_t>(tx.cp_list.size()));
  for (const auto& c : tx.cp_list) write_g1(w, c);
  write_g1(w, tx.pcp);
  w.prefixed(tx.pi_out.data);
  w.raw(tx.accu.encode());
  tx.pi_acs.encode(w);
  write_g1(w, tx.submitter);
  if (with_nonce) write_scalar(w, tx.nonce);
}

std::string key_of(const Digest& d) {
  const auto b = crypto::digest_bytes(d);
  return {b.begin(), b.end()};
}

std::string key_of(const Commitment& c) {
  const auto b = crypto::encode_g1(c);
  return {b.begin(), b.end()};
}

Digest ledger_digest(const crypto::HashParams& hp, std::span<const Digest> prior, std::span<const Commitment> cps) {
  std::vector<Digest> leaves(prior.begin(), prior.end());
  for (const auto& c : cps) leaves.push_back(cp_leaf(hp, c));
  return crypto::merkle_root(hp, leaves);
}

}  // namespace

Bytes Transaction::encode() const {
  ByteWriter body;
  encode_body(body, *this, true);
  ByteWriter w;
  write_section(w, kTagTransaction, body.data());
  return std::move(w).take();
}

Transaction Transaction::decode(std::span<const std::uint8_t> bytes) {
  ByteReader outer(bytes);
  ByteReader r(read_section(outer, kTagTransaction));
  outer.expect_end();
  Transaction tx;
  tx.ledger_digest = read_scalar(r);
  const std::uint32_t n = r.u32();
  if (n == 0) throw DecodeError("transaction carries no commitments");
  if (n > r.remaining() / (4 + crypto::kG1CompressedSize)) throw DecodeError("commitment count exceeds input");
  tx.cp_list.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) tx.cp_list.push_back(read_g1(r));
  tx.pcp = read_g1(r);
  const auto p = r.prefixed();
  tx.pi_out.data.assign(p.begin(), p.end());
  tx.accu = pcs::AccumulatorValue::decode(r.take(pcs::AccumulatorValue::kEncodedSize));
  tx.pi_acs = pcs::AccumulatorProof::decode(r);
  tx.submitter = read_g1(r);
  tx.nonce = read_scalar(r);
  r.expect_end();
  return tx;
}

Digest cp_leaf(const crypto::HashParams& hp, const Commitment& cp) {
  return crypto::crh_val(hp, "cp-leaf", std::span<const std::uint8_t>(crypto::encode_g1(cp)));
}

Digest tx_nonce(const crypto::HashParams& hp, const Transaction& tx) {
  ByteWriter w;
  encode_body(w, tx, false);
  return crypto::crh_val(hp, "tx-nonce", std::span<const std::uint8_t>(w.data()));
}

Digest tx_digest(const crypto::HashParams& hp, std::span<const std::uint8_t> encoded) {
  return crypto::crh_val(hp, "tx", encoded);
}

Transaction build_transaction(const protocol::PublicParams& pp, const protocol::VerifyingKey& vk,
                              std::vector<Commitment> cp_list, const Commitment& pcp,
                              const protocol::OuterProof& pi_out, const pcs::AccumulatorValue& accu,
                              const pcs::AccumulatorProof& pi_acs, const Commitment& irpk,
                              std::span<const Digest> prior_leaves) {
  if (cp_list.empty()) throw protocol::ProtocolError("transaction needs at least one commitment");
  Transaction tx;
  tx.cp_list = std::move(cp_list);
  tx.pcp = pcp;
  tx.pi_out = pi_out;
  tx.accu = accu;
  tx.pi_acs = pi_acs;
  tx.submitter = irpk;
  if (!protocol::verify(pp, vk, tx.statement(), pi_out, accu, pi_acs)) {
    throw protocol::ProtocolError("refusing to build a transaction whose proof does not verify");
  }
  tx.ledger_digest = ledger_digest(pp.hash, prior_leaves, tx.cp_list);
  tx.nonce = tx_nonce(pp.hash, tx);
  return tx;
}

bool verify_tx(const protocol::PublicParams& pp, const protocol::VerifyingKey& vk, const Transaction& tx,
               std::span<const Digest> prior_leaves, crypto::OpCounters* ops) {
  if (tx.cp_list.empty()) throw protocol::ProtocolError("transaction carries no commitments");
  if (!(ledger_digest(pp.hash, prior_leaves, tx.cp_list) == tx.ledger_digest)) return false;
  if (!(tx_nonce(pp.hash, tx) == tx.nonce)) return false;
  return protocol::verify(pp, vk, tx.statement(), tx.pi_out, tx.accu, tx.pi_acs, ops);
}

const char* reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::kNone:
      return "none";
    case RejectReason::kReplay:
      return "replay";
    case RejectReason::kClaimed:
      return "claimed";
    case RejectReason::kInvalid:
      return "invalid";
  }
  return "unknown";
}

Ledger::Ledger(protocol::PublicParams pp, protocol::VerifyingKey vk) : pp_(std::move(pp)), vk_(std::move(vk)) {}

Ledger::Ledger(protocol::PublicParams pp, protocol::VerifyingKey vk, const std::filesystem::path& journal)
    : Ledger(std::move(pp), std::move(vk)) {
  if (std::filesystem::exists(journal)) {
    const Bytes data = read_file(journal);
    ByteReader r(data);
    std::size_t good_end = 0;
    while (r.remaining() > 0) {
      if (r.remaining() < 4) break;
      const std::uint32_t len = r.u32();
      if (r.remaining() < std::size_t{len} + 32) break;
      const auto body = r.take(len);
      const auto digest = r.take(32);
      const Bytes encoded(body.begin(), body.end());
      const auto expected = crypto::digest_bytes(tx_digest(pp_.hash, encoded));
      if (!std::equal(digest.begin(), digest.end(), expected.begin())) {
        throw DecodeError("journal record digest mismatch at offset " + std::to_string(good_end));
      }
      const Receipt rc = apply(Transaction::decode(encoded), encoded, false);
      if (!rc.accepted) throw DecodeError("journal contains a transaction the ledger rejects");
      good_end = r.position();
    }
    if (good_end != data.size()) {
      ++stats_.truncated_records_dropped;
      std::filesystem::resize_file(journal, good_end);
    }
  }
  journal_ = journal;
}

Receipt Ledger::submit(const Transaction& tx) {
  const Bytes encoded = tx.encode();
  std::lock_guard lock(mu_);
  return apply(tx, encoded, journal_.has_value());
}

Receipt Ledger::apply(const Transaction& tx, const Bytes& encoded, bool persist) {
  Receipt rc;
  rc.timestamp = ++clock_;
  rc.tx_digest = tx_digest(pp_.hash, encoded);
  ++stats_.submissions;

  if (nonces_.contains(key_of(tx.nonce))) {
    ++stats_.rejected_replay;
    rc.reason = RejectReason::kReplay;
    return rc;
  }
  for (const auto& c : tx.cp_list) {
    if (claimed_.contains(key_of(c))) {
      ++stats_.rejected_claimed;
      rc.reason = RejectReason::kClaimed;
      return rc;
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const bool ok = verify_tx(pp_, vk_, tx, leaves_, &stats_.ops);
  stats_.verify_time += std::chrono::steady_clock::now() - t0;
  if (!ok) {
    ++stats_.rejected_invalid;
    rc.reason = RejectReason::kInvalid;
    return rc;
  }

  if (persist) {
    std::ofstream out(*journal_, std::ios::binary | std::ios::app);
    ByteWriter w;
    w.prefixed(encoded);
    w.raw(crypto::digest_bytes(rc.tx_digest));
    out.write(reinterpret_cast<const char*>(w.data().data()), static_cast<std::streamsize>(w.size()));
    out.flush();
    if (!out) throw IoError("cannot append to journal " + journal_->string());
  }

  rc.accepted = true;
  rc.height = blocks_.size() + 1;
  leaf_offsets_.push_back(leaves_.size());
  for (const auto& c : tx.cp_list) {
    leaves_.push_back(cp_leaf(pp_.hash, c));
    claimed_.insert(key_of(c));
  }
  nonces_.insert(key_of(tx.nonce));
  blocks_.push_back({rc.height, rc.timestamp, rc.tx_digest, tx});
  ++stats_.accepted;
  stats_.leaves = leaves_.size();
  return rc;
}

bool Ledger::verify_block(std::uint64_t height) const {
  std::lock_guard lock(mu_);
  if (height == 0 || height > blocks_.size()) throw std::out_of_range("no block at height " + std::to_string(height));
  const std::size_t i = height - 1;
  const std::span<const Digest> prior(leaves_.data(), leaf_offsets_[i]);
  return verify_tx(pp_, vk_, blocks_[i].tx, prior);
}

std::uint64_t Ledger::height() const {
  std::lock_guard lock(mu_);
  return blocks_.size();
}

std::vector<Digest> Ledger::leaves() const {
  std::lock_guard lock(mu_);
  return leaves_;
}

Digest Ledger::root() const {
  std::lock_guard lock(mu_);
  if (leaves_.empty()) return Digest::zero();
  return crypto::merkle_root(pp_.hash, leaves_);
}

LedgerStats Ledger::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

}  // namespace didm::ledger
