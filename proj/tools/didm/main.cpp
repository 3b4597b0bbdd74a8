// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

// didm: parameter setup, training and attacks, audits, ledger, benchmarks.

#include <cstdio>
#include <string>
#include <vector>

#include "commands.hpp"
#include "didm/util/file.hpp"

int main(int argc, char** argv) {
  using namespace didm::cli;
  Context ctx;
  CLI::App app{"Deep-model identity audit: prove and verify training lineage of checkpoint sequences"};
  app.name("didm");
  app.require_subcommand(1);
  app.add_option("--config", ctx.globals.config_path, "TOML-like config with [scenario] [train] [attack] [predicates]")
      ->check(CLI::ExistingFile);
  app.add_option("--manifest", ctx.globals.manifest_path, "Manifest path (default: <output>.manifest)");
  app.add_flag("-q,--quiet", ctx.globals.quiet, "Suppress the printed report");

  register_setup(app, ctx);
  register_forge(app, ctx);
  register_audit(app, ctx);
  register_ledger(app, ctx);
  register_bench(app, ctx);
  register_inspect(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "didm: %s\n\n%s", e.what(), app.help().c_str());
    return kExitUsage;
  }

  const std::vector<std::string> args(argv, argv + argc);
  std::string command;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    command += (command.empty() ? "" : " ") + sub->get_name();
  }
  ctx.manifest.set_command(command, args);

  int code = kExitUsage;
  std::string error;
  try {
    code = ctx.run ? ctx.run() : kExitUsage;
  } catch (const std::exception& e) {
    error = e.what();
  }
  if (!error.empty()) std::fprintf(stderr, "didm %s: %s\n", command.c_str(), error.c_str());

  try {
    didm::write_text_atomic(ctx.manifest.path(ctx.globals.manifest_path), ctx.manifest.render(code, error));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "didm: cannot write manifest: %s\n", e.what());
    return kExitUsage;
  }
  return code;
}
