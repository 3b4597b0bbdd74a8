// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "didm/checkpoint/checkpoint.hpp"
#include "didm/forge/init.hpp"
#include "didm/util/bytes.hpp"
#include "didm/util/config.hpp"

namespace didm::predicates {

enum class Predicate : std::uint8_t { kCwcd = 0, kIwfw = 1, kMwcd = 2 };
const char* predicate_name(Predicate p);

struct PredicateConfig {
  double epsilon = 5.0;
  std::uint32_t k_random_inits = 30;
  double emd_threshold = 0.05;
  double pca_threshold = 0.6;
  /// calibrate_delta over five clean ToyScenario runs (seeds 5000..5004)
  /// gives 1.996; rounded up.
  double delta = 2.0;
  std::uint32_t gmm_components = 2;
  /// Fixed seed for the GMM reference draws inside the EMD statistic.
  std::uint64_t emd_seed = 1234;
  forge::InitSpec init_spec;

  static PredicateConfig defaults();
  void validate() const;

  /// Reads the [predicates] section over the defaults.
  static PredicateConfig from_config(const ConfigDoc& doc);
  std::string to_config() const;

  /// Canonical bytes of the parameters a predicate depends on.
  Bytes descriptor(Predicate p) const;
  void encode(ByteWriter& w) const;
  static PredicateConfig decode(ByteReader& r);
  friend bool operator==(const PredicateConfig&, const PredicateConfig&) = default;
};

struct PredicateReport {
  double cwcd_value = 0.0;
  double dis_mean = 0.0;
  double dis_std = 0.0;
  bool cwcd_degenerate = false;
  bool cwcd_pass = false;

  double iwfw1_value = 0.0;
  double iwfw2_value = 0.0;
  std::uint32_t iwfw_layers_used = 0;
  std::uint32_t pca_groups_used = 0;
  std::vector<std::uint32_t> excluded_layers;
  bool pca_degenerate = false;
  bool iwfw_pass = false;

  double mwcd_value = 0.0;
  bool mwcd_pass = false;

  bool all_pass = false;

  /// Flat `name = value` document.
  std::string to_kv() const;
  static PredicateReport from_kv(const std::string& text);
  Bytes encode() const;
  bool passes(Predicate p) const;
  /// Name of the first failing predicate, or empty.
  std::string first_failure() const;
};

struct CwcdResult {
  double value = 0.0;
  double dis_mean = 0.0;
  double dis_std = 0.0;
  bool degenerate = false;
  bool pass = false;
};

struct IwfwResult {
  double emd = 0.0;
  double pca = 0.0;
  std::uint32_t layers_used = 0;
  std::uint32_t groups_used = 0;
  std::vector<std::uint32_t> excluded;
  bool pca_degenerate = false;
  bool pass = false;
};

struct MwcdResult {
  double value = 0.0;
  bool pass = false;
};

/// DisMean/DisStd from k reference inits; value = DL(W_0, W_P).
CwcdResult eval_cwcd(const checkpoint::CheckpointSequence& seq, const PredicateConfig& cfg, std::uint64_t seed);
/// Same statistic computed one reference init at a time; test reference.
CwcdResult eval_cwcd_serial(const checkpoint::CheckpointSequence& seq, const PredicateConfig& cfg,
                            std::uint64_t seed);

IwfwResult eval_iwfw(const checkpoint::WeightCheckpoint& w0, const PredicateConfig& cfg);
MwcdResult eval_mwcd(const checkpoint::CheckpointSequence& seq, const PredicateConfig& cfg);

/// Largest adjacent DP over the sequence (the statistic behind eval_mwcd).
double max_adjacent_dp(const checkpoint::CheckpointSequence& seq);

PredicateReport evaluate(const checkpoint::CheckpointSequence& seq, const PredicateConfig& cfg, std::uint64_t seed);

/// 3x the largest adjacent DP across clean sequences.
double calibrate_delta(const std::vector<checkpoint::CheckpointSequence>& clean_runs);

}  // namespace didm::predicates
