// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/forge/forge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "didm/util/rng.hpp"

namespace didm::forge {

using checkpoint::Architecture;
using checkpoint::CheckpointSequence;
using checkpoint::WeightCheckpoint;

namespace {

struct RcaTerm {
  double beta;
  std::vector<double> anchor;  // flattened W_0
};

struct KdTerm {
  const WeightCheckpoint* teacher;
  const std::vector<bool>* labeled;
  double lambda_kd;
  double lambda_ce;
};

struct Objective {
  double poison_rate = 0.0;
  std::optional<RcaTerm> rca;
  std::optional<KdTerm> kd;
};

// Row-major activations for one batch.
struct Forward {
  std::vector<std::vector<double>> acts;  // acts[t] is the input to layer t; acts[L] = logits
};

Forward forward(const WeightCheckpoint& w, const Architecture& arch, const double* x, std::size_t b) {
  Forward f;
  const std::size_t layers = arch.layers.size();
  f.acts.resize(layers + 1);
  f.acts[0].assign(x, x + b * arch.layers[0].cols);
  for (std::size_t t = 0; t < layers; ++t) {
    const auto& s = arch.layers[t];
    const auto& in = f.acts[t];
    auto& out = f.acts[t + 1];
    out.assign(b * s.rows, 0.0);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t r = 0; r < s.rows; ++r) {
        double z = w.layers[t].bias[r];
        for (std::size_t c = 0; c < s.cols; ++c) z += w.layers[t].weights[r * s.cols + c] * in[i * s.cols + c];
        out[i * s.rows + r] = t + 1 < layers ? std::tanh(z) : z;
      }
    }
  }
  return f;
}

void softmax_rows(std::vector<double>& z, std::size_t b, std::size_t k) {
  for (std::size_t i = 0; i < b; ++i) {
    double* row = z.data() + i * k;
    const double mx = *std::max_element(row, row + k);
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      row[j] = std::exp(row[j] - mx);
      sum += row[j];
    }
    for (std::size_t j = 0; j < k; ++j) row[j] /= sum;
  }
}

// Gradient w.r.t. all parameters given dL/dlogits.
WeightCheckpoint backward(const WeightCheckpoint& w, const Architecture& arch, const Forward& f,
                          std::vector<double> dz, std::size_t b) {
  WeightCheckpoint g = checkpoint::zeros_like(arch);
  for (std::size_t t = arch.layers.size(); t-- > 0;) {
    const auto& s = arch.layers[t];
    const auto& in = f.acts[t];
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t r = 0; r < s.rows; ++r) {
        const double d = dz[i * s.rows + r];
        g.layers[t].bias[r] += d;
        for (std::size_t c = 0; c < s.cols; ++c) g.layers[t].weights[r * s.cols + c] += d * in[i * s.cols + c];
      }
    }
    if (t == 0) break;
    std::vector<double> prev(b * s.cols, 0.0);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t c = 0; c < s.cols; ++c) {
        double acc = 0.0;
        for (std::size_t r = 0; r < s.rows; ++r) acc += dz[i * s.rows + r] * w.layers[t].weights[r * s.cols + c];
        const double a = in[i * s.cols + c];
        prev[i * s.cols + c] = acc * (1.0 - a * a);
      }
    }
    dz = std::move(prev);
  }
  return g;
}

CheckpointSequence run_sgd(const Architecture& arch, const WeightCheckpoint& start, const SyntheticDataset& data,
                           const TrainConfig& cfg, const Objective& obj) {
  cfg.validate();
  arch.validate();
  start.check_against(arch);
  if (data.n == 0) throw std::invalid_argument("empty dataset");
  if (data.d != arch.layers.front().cols) throw std::invalid_argument("dataset width does not match architecture");
  const std::size_t k = arch.layers.back().rows;
  if (k != data.classes) throw std::invalid_argument("architecture output width must equal class count");

  Rng rng(mix_seed(cfg.seed, 0x5eed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CheckpointSequence seq;
  seq.arch = arch;
  WeightCheckpoint w = start;
  w.epoch = 0;
  seq.checkpoints.push_back(w);

  std::vector<std::size_t> perm(data.n);
  std::vector<double> xb;
  for (std::uint32_t e = 0; e < cfg.epochs; ++e) {
    std::vector<std::uint32_t> labels = data.labels;
    if (obj.poison_rate > 0.0) {
      const double pr = obj.poison_rate * static_cast<double>(e + 1) / cfg.epochs;
      for (auto& y : labels) {
        if (unit(rng) < pr) y = (y + 1) % data.classes;
      }
    }
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    double loss = 0.0;
    for (std::size_t s = 0; s < data.n; s += cfg.batch_size) {
      const std::size_t b = std::min<std::size_t>(cfg.batch_size, data.n - s);
      xb.resize(b * data.d);
      for (std::size_t i = 0; i < b; ++i) {
        std::copy_n(data.inputs.begin() + static_cast<std::ptrdiff_t>(perm[s + i] * data.d), data.d,
                    xb.begin() + static_cast<std::ptrdiff_t>(i * data.d));
      }
      const Forward f = forward(w, arch, xb.data(), b);
      std::vector<double> p = f.acts.back();
      softmax_rows(p, b, k);
      std::vector<double> dz(b * k, 0.0);
      if (!obj.kd) {
        for (std::size_t i = 0; i < b; ++i) {
          const std::uint32_t y = labels[perm[s + i]];
          loss -= std::log(std::max(p[i * k + y], 1e-300)) / static_cast<double>(b);
          for (std::size_t j = 0; j < k; ++j) {
            dz[i * k + j] = (p[i * k + j] - (j == y ? 1.0 : 0.0)) / static_cast<double>(b);
          }
        }
      } else {
        const auto& kd = *obj.kd;
        std::vector<double> q = forward(*kd.teacher, arch, xb.data(), b).acts.back();
        softmax_rows(q, b, k);
        for (std::size_t i = 0; i < b; ++i) {
          const std::size_t row = perm[s + i];
          const bool lab = (*kd.labeled)[row];
          const std::uint32_t y = labels[row];
          for (std::size_t j = 0; j < k; ++j) {
            const double pj = p[i * k + j];
            const double qj = q[i * k + j];
            loss += kd.lambda_kd * (qj > 0 ? qj * (std::log(qj) - std::log(std::max(pj, 1e-300))) : 0.0);
            double d = kd.lambda_kd * (pj - qj);
            if (lab) d += kd.lambda_ce * (pj - (j == y ? 1.0 : 0.0));
            dz[i * k + j] = d;
          }
          if (lab) loss -= kd.lambda_ce * std::log(std::max(p[i * k + y], 1e-300));
        }
      }
      WeightCheckpoint g = backward(w, arch, f, std::move(dz), b);
      if (obj.rca) {
        const auto flat = checkpoint::flatten(w);
        double nrm = 0.0;
        for (std::size_t i = 0; i < flat.size(); ++i) {
          const double d = flat[i] - obj.rca->anchor[i];
          nrm += d * d;
        }
        nrm = std::sqrt(nrm) + 1e-12;
        const double scale = obj.rca->beta / (nrm * static_cast<double>(flat.size()));
        loss += obj.rca->beta * (nrm / static_cast<double>(flat.size()));
        std::size_t pos = 0;
        for (auto& l : g.layers) {
          for (auto& v : l.weights) {
            v += scale * (flat[pos] - obj.rca->anchor[pos]);
            ++pos;
          }
          for (auto& v : l.bias) {
            v += scale * (flat[pos] - obj.rca->anchor[pos]);
            ++pos;
          }
        }
      }
      for (std::size_t t = 0; t < w.layers.size(); ++t) {
        for (std::size_t i = 0; i < w.layers[t].weights.size(); ++i) {
          w.layers[t].weights[i] -= cfg.learning_rate * g.layers[t].weights[i];
        }
        for (std::size_t i = 0; i < w.layers[t].bias.size(); ++i) {
          w.layers[t].bias[i] -= cfg.learning_rate * g.layers[t].bias[i];
        }
      }
    }
    if (!std::isfinite(loss)) throw DivergenceError("training diverged at epoch " + std::to_string(e + 1));
    w.epoch = e + 1;
    try {
      w.check_against(arch);
    } catch (const checkpoint::ArchitectureError&) {
      throw DivergenceError("training diverged at epoch " + std::to_string(e + 1));
    }
    seq.checkpoints.push_back(w);
  }
  return seq;
}

}  // namespace

SyntheticDataset SyntheticDataset::slice(std::size_t begin, std::size_t count) const {
  if (begin + count > n) throw std::out_of_range("dataset slice out of range");
  SyntheticDataset out;
  out.n = count;
  out.d = d;
  out.classes = classes;
  out.inputs.assign(inputs.begin() + static_cast<std::ptrdiff_t>(begin * d),
                    inputs.begin() + static_cast<std::ptrdiff_t>((begin + count) * d));
  out.labels.assign(labels.begin() + static_cast<std::ptrdiff_t>(begin),
                    labels.begin() + static_cast<std::ptrdiff_t>(begin + count));
  return out;
}

SyntheticDataset gen_synthetic_dataset(std::size_t n, std::size_t d, std::uint32_t classes, std::uint64_t seed,
                                       double separation) {
  if (classes < 2 || d < 2 || n < 1) throw std::invalid_argument("dataset needs n >= 1, d >= 2, classes >= 2");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> cls(0, classes - 1);
  // Two classes sit at +-u * separation/2. Otherwise class directions are
  // orthonormalized (when classes <= d) and scaled so every pair of means is
  // `separation` apart.
  std::vector<double> means(classes * d);
  for (std::uint32_t c = 0; c < classes; ++c) {
    double* m = means.data() + c * d;
    for (std::size_t j = 0; j < d; ++j) m[j] = normal(rng);
    if (classes <= d) {
      for (std::uint32_t prev = 0; prev < c; ++prev) {
        const double* q = means.data() + prev * d;
        double dot = 0.0;
        for (std::size_t j = 0; j < d; ++j) dot += m[j] * q[j];
        for (std::size_t j = 0; j < d; ++j) m[j] -= dot * q[j];
      }
    }
    double nrm = 0.0;
    for (std::size_t j = 0; j < d; ++j) nrm += m[j] * m[j];
    nrm = std::sqrt(nrm);
    for (std::size_t j = 0; j < d; ++j) m[j] /= nrm;
  }
  if (classes == 2) {
    for (std::size_t j = 0; j < d; ++j) {
      means[j] *= separation / 2.0;
      means[d + j] = -means[j];
    }
  } else {
    const double scale = classes <= d ? separation / std::sqrt(2.0) : separation / 2.0;
    for (auto& v : means) v *= scale;
  }
  SyntheticDataset ds;
  ds.n = n;
  ds.d = d;
  ds.classes = classes;
  ds.inputs.resize(n * d);
  ds.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t y = cls(rng);
    ds.labels[i] = y;
    for (std::size_t j = 0; j < d; ++j) ds.inputs[i * d + j] = means[y * d + j] + normal(rng);
  }
  return ds;
}

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (!(learning_rate > 0)) throw std::invalid_argument("learning rate must be positive");
  if (batch_size < 1) throw std::invalid_argument("batch size must be positive");
}

std::vector<double> predict_proba(const WeightCheckpoint& w, const Architecture& arch, const SyntheticDataset& data) {
  auto logits = forward(w, arch, data.inputs.data(), data.n).acts.back();
  softmax_rows(logits, data.n, arch.layers.back().rows);
  return logits;
}

double accuracy(const WeightCheckpoint& w, const Architecture& arch, const SyntheticDataset& data) {
  const auto p = predict_proba(w, arch, data);
  const std::size_t k = arch.layers.back().rows;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < data.n; ++i) {
    const auto* row = p.data() + i * k;
    if (static_cast<std::uint32_t>(std::max_element(row, row + k) - row) == data.labels[i]) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(data.n);
}

CheckpointSequence train_sequence(const Architecture& arch, const SyntheticDataset& data, const TrainConfig& cfg,
                                  const InitSpec& spec, std::uint64_t seed) {
  TrainConfig c = cfg;
  c.seed = mix_seed(cfg.seed ^ seed, 1);
  return run_sgd(arch, init_weights(arch, spec, mix_seed(seed, 0)), data, c, Objective{});
}

CheckpointSequence train_from(const Architecture& arch, const WeightCheckpoint& start, const SyntheticDataset& data,
                              const TrainConfig& cfg) {
  return run_sgd(arch, start, data, cfg, Objective{});
}

const char* attack_name(AttackFamily f) {
  switch (f) {
    case AttackFamily::kRca:
      return "rca";
    case AttackFamily::kCfa:
      return "cfa";
    case AttackFamily::kMda:
      return "mda";
  }
  return "?";
}

AttackFamily parse_attack(const std::string& s) {
  if (s == "rca" || s == "RCA") return AttackFamily::kRca;
  if (s == "cfa" || s == "CFA") return AttackFamily::kCfa;
  if (s == "mda" || s == "MDA") return AttackFamily::kMda;
  throw std::invalid_argument("unknown attack family: " + s);
}

CheckpointSequence attack_cfa(const WeightCheckpoint& w_final, const Architecture& arch, const InitSpec& spec,
                              double mu, std::uint32_t epochs, std::uint64_t seed) {
  if (!(mu > 0) || mu * epochs < 1.0) throw std::invalid_argument("CFA needs mu * P >= 1");
  w_final.check_against(arch);
  const auto w0 = init_weights(arch, spec, mix_seed(seed, 0));
  const auto a = checkpoint::flatten(w0);
  const auto b = checkpoint::flatten(w_final);
  CheckpointSequence seq;
  seq.arch = arch;
  for (std::uint32_t i = 0; i <= epochs; ++i) {
    const double m = std::min(1.0, i * mu);
    if (m >= 1.0) {
      auto w = w_final;
      w.epoch = i;
      seq.checkpoints.push_back(std::move(w));
      continue;
    }
    std::vector<double> v(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) v[k] = (1.0 - m) * a[k] + m * b[k];
    seq.checkpoints.push_back(checkpoint::unflatten(arch, v, i));
  }
  return seq;
}

CheckpointSequence attack_rca(const WeightCheckpoint& w_final, const Architecture& arch,
                              const SyntheticDataset& data_aux, const TrainConfig& cfg, double beta,
                              double poison_rate, const InitSpec& spec, std::uint64_t seed) {
  if (data_aux.n == 0) throw std::invalid_argument("RCA needs auxiliary data");
  Objective obj;
  obj.poison_rate = poison_rate;
  if (beta > 0) obj.rca = RcaTerm{beta, checkpoint::flatten(init_weights(arch, spec, mix_seed(seed, 0)))};
  TrainConfig c = cfg;
  c.seed = mix_seed(cfg.seed ^ seed, 1);
  CheckpointSequence path = run_sgd(arch, w_final, data_aux, c, obj);
  std::reverse(path.checkpoints.begin(), path.checkpoints.end());
  for (std::size_t i = 0; i < path.checkpoints.size(); ++i) path.checkpoints[i].epoch = static_cast<std::uint32_t>(i);
  return path;
}

CheckpointSequence attack_mda(const WeightCheckpoint& w_final, const Architecture& arch,
                              const SyntheticDataset& data_aux, const std::vector<bool>& labeled_mask,
                              double lambda_kd, double lambda_ce, const TrainConfig& cfg, const InitSpec& spec,
                              std::uint64_t seed) {
  if (labeled_mask.size() != data_aux.n) throw std::invalid_argument("labeled mask size mismatch");
  Objective obj;
  obj.kd = KdTerm{&w_final, &labeled_mask, lambda_kd, lambda_ce};
  TrainConfig c = cfg;
  c.seed = mix_seed(cfg.seed ^ seed, 1);
  return run_sgd(arch, init_weights(arch, spec, mix_seed(seed, 0)), data_aux, c, obj);
}

Architecture ToyScenario::arch() const {
  const std::uint32_t widths[] = {static_cast<std::uint32_t>(d), hidden, classes};
  return Architecture::mlp(widths);
}

SyntheticDataset ToyScenario::dataset() const { return gen_synthetic_dataset(n, d, classes, data_seed); }

SyntheticDataset ToyScenario::aux_dataset() const {
  return dataset().slice(0, static_cast<std::size_t>(std::llround(attack.aux_fraction * static_cast<double>(n))));
}

std::vector<bool> ToyScenario::labeled_mask(std::size_t aux_n) const {
  std::vector<bool> mask(aux_n, false);
  const auto labeled = static_cast<std::size_t>(std::llround(attack.labeled_fraction * static_cast<double>(aux_n)));
  for (std::size_t i = 0; i < labeled && i < aux_n; ++i) mask[i] = true;
  return mask;
}

CheckpointSequence ToyScenario::clean(std::uint64_t seed) const {
  return train_sequence(arch(), dataset(), train, init, seed);
}

CheckpointSequence ToyScenario::forged(AttackFamily f, const WeightCheckpoint& w_final, std::uint64_t seed) const {
  switch (f) {
    case AttackFamily::kCfa:
      return attack_cfa(w_final, arch(), init, attack.mu, train.epochs, seed);
    case AttackFamily::kRca:
      return attack_rca(w_final, arch(), aux_dataset(), train, attack.beta, attack.poison_rate, init, seed);
    case AttackFamily::kMda: {
      const auto aux = aux_dataset();
      return attack_mda(w_final, arch(), aux, labeled_mask(aux.n), attack.lambda_kd, attack.lambda_ce, train, init,
                        seed);
    }
  }
  throw std::invalid_argument("unknown attack family");
}

}  // namespace didm::forge
