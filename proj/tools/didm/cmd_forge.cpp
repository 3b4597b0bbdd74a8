// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"
#include "didm/util/file.hpp"

namespace didm::cli {
namespace {

struct TrainOpts {
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::uint32_t> epochs;
  std::optional<double> lr;
  std::optional<std::uint32_t> batch_size;
};

void summarize(const Context& ctx, const forge::ToyScenario& sc, const checkpoint::CheckpointSequence& seq,
               const std::string& out, KvWriter& kv) {
  kv.put("out", out);
  kv.put("checkpoints", seq.checkpoints.size());
  kv.put("parameters", seq.arch.total_params());
  kv.put("final_accuracy", forge::accuracy(seq.last(), seq.arch, sc.dataset()));
  say(ctx.globals, kv.str());
}

int run_train(const TrainOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  m.default_path(o.out);
  auto settings = load_settings(ctx.globals, m);
  auto& sc = settings.scenario;
  if (o.epochs) sc.train.epochs = *o.epochs;
  if (o.lr) sc.train.learning_rate = *o.lr;
  if (o.batch_size) sc.train.batch_size = *o.batch_size;
  sc.train.validate();
  m.seed("train", o.seed);
  m.seed("data", sc.data_seed);
  m.param("epochs", std::to_string(sc.train.epochs));
  m.param("learning_rate", sc.train.learning_rate);
  m.param("batch_size", std::to_string(sc.train.batch_size));
  m.param("init", sc.init.describe());

  const auto seq = sc.clean(o.seed);
  write_file_atomic(o.out, checkpoint::encode_sequence(seq));
  m.output("sequence", o.out);
  KvWriter kv;
  kv.put("kind", "clean");
  summarize(ctx, sc, seq, o.out, kv);
  return kExitOk;
}

struct AttackOpts {
  std::string family;
  std::string victim;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<double> beta, poison_rate, mu, lambda_kd, lambda_ce, aux_fraction, labeled_fraction;
};

int run_attack(const AttackOpts& o, Context& ctx) {
  auto& m = ctx.manifest;
  m.default_path(o.out);
  auto settings = load_settings(ctx.globals, m);
  auto& sc = settings.scenario;
  auto& a = sc.attack;
  a.family = forge::parse_attack(o.family);
  if (o.beta) a.beta = *o.beta;
  if (o.poison_rate) a.poison_rate = *o.poison_rate;
  if (o.mu) a.mu = *o.mu;
  if (o.lambda_kd) a.lambda_kd = *o.lambda_kd;
  if (o.lambda_ce) a.lambda_ce = *o.lambda_ce;
  if (o.aux_fraction) a.aux_fraction = *o.aux_fraction;
  if (o.labeled_fraction) a.labeled_fraction = *o.labeled_fraction;

  m.input("victim", o.victim);
  const auto victim = checkpoint::decode_sequence(read_file(o.victim));
  if (!(victim.arch == sc.arch())) throw UsageError("victim architecture does not match the configured scenario");
  m.seed("attack", o.seed);
  m.param("family", forge::attack_name(a.family));
  m.param("beta", a.beta);
  m.param("poison_rate", a.poison_rate);
  m.param("mu", a.mu);
  m.param("lambda_kd", a.lambda_kd);
  m.param("lambda_ce", a.lambda_ce);
  m.param("aux_fraction", a.aux_fraction);
  m.param("labeled_fraction", a.labeled_fraction);

  const auto seq = sc.forged(a.family, victim.last(), o.seed);
  write_file_atomic(o.out, checkpoint::encode_sequence(seq));
  m.output("sequence", o.out);
  KvWriter kv;
  kv.put("kind", forge::attack_name(a.family));
  kv.put("victim_final_accuracy", forge::accuracy(victim.last(), victim.arch, sc.dataset()));
  kv.put("dl_to_victim", checkpoint::dl_distance(seq.last(), victim.last()));
  summarize(ctx, sc, seq, o.out, kv);
  return kExitOk;
}

}  // namespace

void register_forge(CLI::App& app, Context& ctx) {
  auto* f = app.add_subcommand("forge", "Train clean checkpoint sequences or forge them");
  f->require_subcommand(1);

  auto train = std::make_shared<TrainOpts>();
  auto* t = f->add_subcommand("train", "Train a clean sequence on the synthetic scenario");
  t->add_option("--seed", train->seed, "Training seed")->required();
  t->add_option("--out", train->out, "Output checkpoint-sequence file")->required();
  t->add_option("--epochs", train->epochs, "Epochs P");
  t->add_option("--learning-rate,--lr", train->lr, "SGD step size");
  t->add_option("--batch-size", train->batch_size, "Minibatch size");
  t->callback([train, &ctx] { ctx.run = [train, &ctx] { return run_train(*train, ctx); }; });

  auto attack = std::make_shared<AttackOpts>();
  auto* a = f->add_subcommand("attack", "Forge a history for a victim's final weights");
  a->add_option("--family", attack->family, "rca, cfa or mda")->required()->check(CLI::IsMember({"rca", "cfa", "mda"}));
  a->add_option("--victim", attack->victim, "Victim checkpoint-sequence file")->required()->check(CLI::ExistingFile);
  a->add_option("--seed", attack->seed, "Forger seed")->required();
  a->add_option("--out", attack->out, "Output checkpoint-sequence file")->required();
  a->add_option("--beta", attack->beta, "RCA weight of the distance-to-init term");
  a->add_option("--poison-rate", attack->poison_rate, "RCA final label-poison rate");
  a->add_option("--mu", attack->mu, "CFA interpolation step");
  a->add_option("--lambda-kd", attack->lambda_kd, "MDA distillation weight");
  a->add_option("--lambda-ce", attack->lambda_ce, "MDA labeled cross-entropy weight");
  a->add_option("--aux-fraction", attack->aux_fraction, "Share of the training set the forger holds");
  a->add_option("--labeled-fraction", attack->labeled_fraction, "MDA labeled share of the auxiliary set");
  a->callback([attack, &ctx] { ctx.run = [attack, &ctx] { return run_attack(*attack, ctx); }; });
}

}  // namespace didm::cli
