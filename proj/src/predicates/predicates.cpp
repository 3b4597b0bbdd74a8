// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/predicates/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "didm/predicates/stats.hpp"
#include "didm/util/rng.hpp"

namespace didm::predicates {

using checkpoint::CheckpointSequence;
using checkpoint::WeightCheckpoint;

namespace {

constexpr std::size_t kMinLayerSamples = 8;
constexpr std::size_t kEmdOversample = 10;

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

CwcdResult finish_cwcd(std::vector<double> dists, double value, double epsilon) {
  // sorted so the statistic does not depend on reference order
  std::sort(dists.begin(), dists.end());
  CwcdResult r;
  r.value = value;
  r.dis_mean = mean_of(dists);
  double var = 0.0;
  for (double d : dists) var += (d - r.dis_mean) * (d - r.dis_mean);
  r.dis_std = std::sqrt(var / static_cast<double>(dists.size()));
  if (r.dis_std == 0.0) {
    r.degenerate = true;
    r.pass = value < r.dis_mean;
  } else {
    r.pass = value <= r.dis_mean - epsilon * r.dis_std;
  }
  return r;
}

void check_sequence(const CheckpointSequence& seq) {
  if (seq.checkpoints.size() < 2) throw std::invalid_argument("predicates need at least two checkpoints");
  for (const auto& c : seq.checkpoints) c.check_against(seq.arch);
}

void put_bits(ByteWriter& w, double v) { w.f64(v); }

}  // namespace

const char* predicate_name(Predicate p) {
  switch (p) {
    case Predicate::kCwcd:
      return "CWCD";
    case Predicate::kIwfw:
      return "IWFW";
    case Predicate::kMwcd:
      return "MWCD";
  }
  return "?";
}

PredicateConfig PredicateConfig::defaults() { return PredicateConfig{}; }

void PredicateConfig::validate() const {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (k_random_inits < 10) throw std::invalid_argument("k_random_inits must be at least 10");
  if (!(pca_threshold > 0 && pca_threshold < 1)) throw std::invalid_argument("pca_threshold must lie in (0,1)");
  if (!(emd_threshold > 0)) throw std::invalid_argument("emd_threshold must be positive");
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  if (gmm_components != 2) throw std::invalid_argument("only two-component GMMs are supported");
  init_spec.validate();
}

PredicateConfig PredicateConfig::from_config(const ConfigDoc& doc) {
  PredicateConfig c = defaults();
  const std::string s = "predicates";
  c.epsilon = doc.get_double(s, "epsilon", c.epsilon);
  c.k_random_inits = static_cast<std::uint32_t>(doc.get_int(s, "k_random_inits", c.k_random_inits));
  c.emd_threshold = doc.get_double(s, "emd_threshold", c.emd_threshold);
  c.pca_threshold = doc.get_double(s, "pca_threshold", c.pca_threshold);
  c.delta = doc.get_double(s, "delta", c.delta);
  c.emd_seed = static_cast<std::uint64_t>(doc.get_int(s, "emd_seed", static_cast<long long>(c.emd_seed)));
  const std::string i = "init";
  if (auto kind = doc.get(i, "kind")) {
    if (*kind == "gaussian") {
      c.init_spec = forge::InitSpec::gaussian(doc.get_double(i, "mean", 0.0), doc.get_double(i, "stddev", 0.1));
    } else if (*kind == "gmm2") {
      auto& sp = c.init_spec;
      sp.kind = forge::InitSpec::Kind::kGmm2;
      sp.weight[0] = doc.get_double(i, "weight0", sp.weight[0]);
      sp.weight[1] = 1.0 - sp.weight[0];
      sp.mean[0] = doc.get_double(i, "mean0", sp.mean[0]);
      sp.mean[1] = doc.get_double(i, "mean1", sp.mean[1]);
      sp.stddev[0] = doc.get_double(i, "stddev0", sp.stddev[0]);
      sp.stddev[1] = doc.get_double(i, "stddev1", sp.stddev[1]);
    } else {
      throw ConfigError("init.kind must be gmm2 or gaussian");
    }
  }
  c.validate();
  return c;
}

std::string PredicateConfig::to_config() const {
  KvWriter kv;
  std::string out = "[predicates]\n";
  kv.put("epsilon", epsilon);
  kv.put("k_random_inits", static_cast<unsigned long long>(k_random_inits));
  kv.put("emd_threshold", emd_threshold);
  kv.put("pca_threshold", pca_threshold);
  kv.put("delta", delta);
  kv.put("emd_seed", static_cast<unsigned long long>(emd_seed));
  out += kv.str();
  KvWriter ini;
  if (init_spec.kind == forge::InitSpec::Kind::kGaussian) {
    ini.put("kind", std::string_view("gaussian"));
    ini.put("mean", init_spec.mean[0]);
    ini.put("stddev", init_spec.stddev[0]);
  } else {
    ini.put("kind", std::string_view("gmm2"));
    ini.put("weight0", init_spec.weight[0]);
    ini.put("mean0", init_spec.mean[0]);
    ini.put("mean1", init_spec.mean[1]);
    ini.put("stddev0", init_spec.stddev[0]);
    ini.put("stddev1", init_spec.stddev[1]);
  }
  return out + "\n[init]\n" + ini.str();
}

Bytes PredicateConfig::descriptor(Predicate p) const {
  ByteWriter w;
  w.str(predicate_name(p));
  switch (p) {
    case Predicate::kCwcd:
      put_bits(w, epsilon);
      w.u32(k_random_inits);
      init_spec.encode(w);
      break;
    case Predicate::kIwfw:
      put_bits(w, emd_threshold);
      put_bits(w, pca_threshold);
      w.u32(gmm_components);
      w.u64(emd_seed);
      break;
    case Predicate::kMwcd:
      put_bits(w, delta);
      break;
  }
  return std::move(w).take();
}

void PredicateConfig::encode(ByteWriter& w) const {
  w.f64(epsilon);
  w.u32(k_random_inits);
  w.f64(emd_threshold);
  w.f64(pca_threshold);
  w.f64(delta);
  w.u32(gmm_components);
  w.u64(emd_seed);
  init_spec.encode(w);
}

PredicateConfig PredicateConfig::decode(ByteReader& r) {
  PredicateConfig c;
  c.epsilon = r.f64();
  c.k_random_inits = r.u32();
  c.emd_threshold = r.f64();
  c.pca_threshold = r.f64();
  c.delta = r.f64();
  c.gmm_components = r.u32();
  c.emd_seed = r.u64();
  c.init_spec = forge::InitSpec::decode(r);
  return c;
}

std::string PredicateReport::to_kv() const {
  KvWriter kv;
  kv.put("cwcd_value", cwcd_value);
  kv.put("dis_mean", dis_mean);
  kv.put("dis_std", dis_std);
  kv.put("cwcd_degenerate", cwcd_degenerate);
  kv.put("cwcd_pass", cwcd_pass);
  kv.put("iwfw1_value", iwfw1_value);
  kv.put("iwfw2_value", iwfw2_value);
  kv.put("iwfw_layers_used", static_cast<unsigned long long>(iwfw_layers_used));
  kv.put("pca_groups_used", static_cast<unsigned long long>(pca_groups_used));
  std::string ex;
  for (std::size_t i = 0; i < excluded_layers.size(); ++i) {
    if (i != 0) ex += ",";
    ex += std::to_string(excluded_layers[i]);
  }
  kv.put("excluded_layers", std::string_view(ex));
  kv.put("pca_degenerate", pca_degenerate);
  kv.put("iwfw_pass", iwfw_pass);
  kv.put("mwcd_value", mwcd_value);
  kv.put("mwcd_pass", mwcd_pass);
  kv.put("all_pass", all_pass);
  return kv.str();
}

PredicateReport PredicateReport::from_kv(const std::string& text) {
  const ConfigDoc doc = ConfigDoc::parse(text);
  auto num = [&](const char* k) {
    if (!doc.get("", k)) throw ConfigError(std::string("report is missing ") + k);
    return doc.get_double("", k, 0.0);
  };
  auto flag = [&](const char* k) { return num(k) != 0.0; };
  PredicateReport r;
  r.cwcd_value = num("cwcd_value");
  r.dis_mean = num("dis_mean");
  r.dis_std = num("dis_std");
  r.cwcd_degenerate = flag("cwcd_degenerate");
  r.cwcd_pass = flag("cwcd_pass");
  r.iwfw1_value = num("iwfw1_value");
  r.iwfw2_value = num("iwfw2_value");
  r.iwfw_layers_used = static_cast<std::uint32_t>(num("iwfw_layers_used"));
  r.pca_groups_used = static_cast<std::uint32_t>(num("pca_groups_used"));
  const std::string ex = doc.get("", "excluded_layers").value_or("");
  std::stringstream ss(ex);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) r.excluded_layers.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  r.pca_degenerate = flag("pca_degenerate");
  r.iwfw_pass = flag("iwfw_pass");
  r.mwcd_value = num("mwcd_value");
  r.mwcd_pass = flag("mwcd_pass");
  r.all_pass = flag("all_pass");
  return r;
}

Bytes PredicateReport::encode() const {
  ByteWriter w;
  w.raw(to_kv());
  return std::move(w).take();
}

bool PredicateReport::passes(Predicate p) const {
  switch (p) {
    case Predicate::kCwcd:
      return cwcd_pass;
    case Predicate::kIwfw:
      return iwfw_pass;
    case Predicate::kMwcd:
      return mwcd_pass;
  }
  return false;
}

std::string PredicateReport::first_failure() const {
  for (auto p : {Predicate::kCwcd, Predicate::kIwfw, Predicate::kMwcd}) {
    if (!passes(p)) return predicate_name(p);
  }
  return {};
}

namespace {

// Reference inits get their own stream so an audit seed equal to the
// training seed cannot reproduce the trainer's own W_0.
std::uint64_t reference_seed(std::uint64_t seed, std::uint64_t j) {
  constexpr std::uint64_t kCwcdStream = 0xc3cdULL;
  return mix_seed(mix_seed(seed, kCwcdStream), j);
}

}  // namespace

CwcdResult eval_cwcd(const CheckpointSequence& seq, const PredicateConfig& cfg, std::uint64_t seed) {
  check_sequence(seq);
  const WeightCheckpoint& wp = seq.last();
  std::vector<double> dists(cfg.k_random_inits);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(dists.size()); ++j) {
    const auto ref = forge::init_weights(seq.arch, cfg.init_spec, reference_seed(seed, static_cast<std::uint64_t>(j)));
    dists[static_cast<std::size_t>(j)] = checkpoint::dl_distance(ref, wp);
  }
  return finish_cwcd(std::move(dists), checkpoint::dl_distance(seq.first(), wp), cfg.epsilon);
}

CwcdResult eval_cwcd_serial(const CheckpointSequence& seq, const PredicateConfig& cfg, std::uint64_t seed) {
  check_sequence(seq);
  const WeightCheckpoint& wp = seq.last();
  std::vector<double> dists;
  for (std::uint32_t j = 0; j < cfg.k_random_inits; ++j) {
    dists.push_back(checkpoint::dl_distance(forge::init_weights(seq.arch, cfg.init_spec, reference_seed(seed, j)), wp));
  }
  return finish_cwcd(std::move(dists), checkpoint::dl_distance(seq.first(), wp), cfg.epsilon);
}

IwfwResult eval_iwfw(const WeightCheckpoint& w0, const PredicateConfig& cfg) {
  const std::size_t layers = w0.layers.size();
  std::vector<double> emd(layers, -1.0);
  std::vector<double> pca(layers, -1.0);
  std::vector<char> degenerate(layers, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t ti = 0; ti < static_cast<std::ptrdiff_t>(layers); ++ti) {
    const auto t = static_cast<std::size_t>(ti);
    const auto& l = w0.layers[t];
    std::vector<double> x(l.weights);
    x.insert(x.end(), l.bias.begin(), l.bias.end());
    if (x.size() < kMinLayerSamples) continue;
    const GmmParams g = fit_gmm2(x);
    const auto ref = sample_gmm2(g, kEmdOversample * x.size(), mix_seed(cfg.emd_seed, t));
    emd[t] = emd_1d(x, ref);
    // rows are samples, columns features; needs more samples than features
    const std::size_t rows = l.bias.size();
    const std::size_t cols = rows == 0 ? 0 : l.weights.size() / rows;
    if (rows > cols && cols >= 2) {
      const auto r = pca_max_ratio(l.weights, rows, cols);
      pca[t] = r.ratio;
      degenerate[t] = r.degenerate ? 1 : 0;
    }
  }
  IwfwResult r;
  for (std::size_t t = 0; t < layers; ++t) {
    if (emd[t] < 0) {
      r.excluded.push_back(static_cast<std::uint32_t>(t));
      continue;
    }
    ++r.layers_used;
    r.emd = std::max(r.emd, emd[t]);
    if (pca[t] >= 0) {
      ++r.groups_used;
      r.pca = std::max(r.pca, pca[t]);
      r.pca_degenerate = r.pca_degenerate || degenerate[t] != 0;
    }
  }
  r.pass = r.layers_used > 0 && r.emd <= cfg.emd_threshold && r.pca <= cfg.pca_threshold;
  return r;
}

double max_adjacent_dp(const CheckpointSequence& seq) {
  check_sequence(seq);
  double mx = 0.0;
  for (std::size_t i = 1; i < seq.checkpoints.size(); ++i) {
    const auto& a = seq.checkpoints[i - 1];
    const auto& b = seq.checkpoints[i];
    for (std::size_t t = 0; t < a.layers.size(); ++t) {
      const double db = mean_of(b.layers[t].bias) - mean_of(a.layers[t].bias);
      double na = 0.0;
      double nb = 0.0;
      for (double v : a.layers[t].weights) na += v * v;
      for (double v : b.layers[t].weights) nb += v * v;
      mx = std::max(mx, std::hypot(db, nb - na));
    }
  }
  return mx;
}

MwcdResult eval_mwcd(const CheckpointSequence& seq, const PredicateConfig& cfg) {
  MwcdResult r;
  r.value = max_adjacent_dp(seq);
  r.pass = r.value < cfg.delta;
  return r;
}

PredicateReport evaluate(const CheckpointSequence& seq, const PredicateConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  PredicateReport rep;
  const auto c = eval_cwcd(seq, cfg, seed);
  rep.cwcd_value = c.value;
  rep.dis_mean = c.dis_mean;
  rep.dis_std = c.dis_std;
  rep.cwcd_degenerate = c.degenerate;
  rep.cwcd_pass = c.pass;
  const auto i = eval_iwfw(seq.first(), cfg);
  rep.iwfw1_value = i.emd;
  rep.iwfw2_value = i.pca;
  rep.iwfw_layers_used = i.layers_used;
  rep.pca_groups_used = i.groups_used;
  rep.excluded_layers = i.excluded;
  rep.pca_degenerate = i.pca_degenerate;
  rep.iwfw_pass = i.pass;
  const auto m = eval_mwcd(seq, cfg);
  rep.mwcd_value = m.value;
  rep.mwcd_pass = m.pass;
  rep.all_pass = rep.cwcd_pass && rep.iwfw_pass && rep.mwcd_pass;
  return rep;
}

double calibrate_delta(const std::vector<CheckpointSequence>& clean_runs) {
  if (clean_runs.empty()) throw std::invalid_argument("calibration needs at least one clean run");
  double mx = 0.0;
  for (const auto& s : clean_runs) mx = std::max(mx, max_adjacent_dp(s));
  return 3.0 * mx;
}

}  // namespace didm::predicates
