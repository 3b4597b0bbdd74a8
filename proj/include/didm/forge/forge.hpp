// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "didm/checkpoint/checkpoint.hpp"
#include "didm/forge/init.hpp"

namespace didm::forge {

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SyntheticDataset {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint32_t classes = 0;
  std::vector<double> inputs;  // row-major n x d
  std::vector<std::uint32_t> labels;

  /// Rows [begin, begin + count).
  SyntheticDataset slice(std::size_t begin, std::size_t count) const;
};

/// Gaussian blobs with unit covariance; class means are random unit
/// directions scaled so that pairs sit `separation` standard deviations apart.
SyntheticDataset gen_synthetic_dataset(std::size_t n, std::size_t d, std::uint32_t classes, std::uint64_t seed,
                                       double separation = 4.0);

struct TrainConfig {
  std::uint32_t epochs = 20;
  double learning_rate = 0.1;
  std::uint32_t batch_size = 64;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Softmax outputs of the MLP (tanh hidden layers, linear output layer).
std::vector<double> predict_proba(const checkpoint::WeightCheckpoint& w, const checkpoint::Architecture& arch,
                                  const SyntheticDataset& data);
double accuracy(const checkpoint::WeightCheckpoint& w, const checkpoint::Architecture& arch,
                const SyntheticDataset& data);

/// Mean-loss SGD from a fresh init; P + 1 checkpoints (epoch 0 is the init).
checkpoint::CheckpointSequence train_sequence(const checkpoint::Architecture& arch, const SyntheticDataset& data,
                                              const TrainConfig& cfg, const InitSpec& spec, std::uint64_t seed);

/// Same as train_sequence but starting from given weights.
checkpoint::CheckpointSequence train_from(const checkpoint::Architecture& arch, const checkpoint::WeightCheckpoint& start,
                                          const SyntheticDataset& data, const TrainConfig& cfg);

enum class AttackFamily : std::uint8_t { kRca, kCfa, kMda };
const char* attack_name(AttackFamily f);
AttackFamily parse_attack(const std::string& s);

struct AttackConfig {
  AttackFamily family = AttackFamily::kCfa;
  double beta = 0.05;
  double poison_rate = 0.3;
  double mu = 0.05;
  double lambda_kd = 1.0;
  double lambda_ce = 0.005;
  double aux_fraction = 0.2;
  double labeled_fraction = 0.5;
};

/// W_i = (1 - mu_i) W_0 + mu_i w_final, mu_i = min(1, i mu).
checkpoint::CheckpointSequence attack_cfa(const checkpoint::WeightCheckpoint& w_final,
                                          const checkpoint::Architecture& arch, const InitSpec& spec, double mu,
                                          std::uint32_t epochs, std::uint64_t seed);

/// Fine-tunes w_final under L_CE + beta DL(W, W_0) toward a fresh W_0 while the
/// label-poison rate rises linearly to poison_rate, then reverses the path.
checkpoint::CheckpointSequence attack_rca(const checkpoint::WeightCheckpoint& w_final,
                                          const checkpoint::Architecture& arch, const SyntheticDataset& data_aux,
                                          const TrainConfig& cfg, double beta, double poison_rate,
                                          const InitSpec& spec, std::uint64_t seed);

/// Distills a fresh student from the teacher w_final. Per batch the loss is
/// summed: lambda_kd KL(teacher || student) + lambda_ce CE on labeled rows.
checkpoint::CheckpointSequence attack_mda(const checkpoint::WeightCheckpoint& w_final,
                                          const checkpoint::Architecture& arch, const SyntheticDataset& data_aux,
                                          const std::vector<bool>& labeled_mask, double lambda_kd, double lambda_ce,
                                          const TrainConfig& cfg, const InitSpec& spec, std::uint64_t seed);

/// The desk-scale scenario: blobs n=1000 d=4, MLP 4-16-2, P=20.
struct ToyScenario {
  std::size_t n = 1000;
  std::size_t d = 4;
  std::uint32_t classes = 2;
  std::uint32_t hidden = 16;
  std::uint64_t data_seed = 7;
  TrainConfig train;
  InitSpec init;
  AttackConfig attack;

  checkpoint::Architecture arch() const;
  SyntheticDataset dataset() const;
  /// Leading aux_fraction of the training set.
  SyntheticDataset aux_dataset() const;
  std::vector<bool> labeled_mask(std::size_t aux_n) const;

  checkpoint::CheckpointSequence clean(std::uint64_t seed) const;
  checkpoint::CheckpointSequence forged(AttackFamily f, const checkpoint::WeightCheckpoint& w_final,
                                        std::uint64_t seed) const;
};

}  // namespace didm::forge
