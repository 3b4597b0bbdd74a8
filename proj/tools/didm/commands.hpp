// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "CLI11.hpp"
#include "common.hpp"

namespace didm::cli {

struct Context {
  Globals globals;
  Manifest manifest;
  /// Set by the selected subcommand's parse callback; run after parsing.
  std::function<int()> run;
};

void register_setup(CLI::App& app, Context& ctx);
void register_forge(CLI::App& app, Context& ctx);
void register_audit(CLI::App& app, Context& ctx);
void register_ledger(CLI::App& app, Context& ctx);
void register_bench(CLI::App& app, Context& ctx);
void register_inspect(CLI::App& app, Context& ctx);

}  // namespace didm::cli
