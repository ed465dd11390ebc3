// Copyright 2026 The matshare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// matshare: deal, run and attack matrix-product secret sharing instances.

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "commands.hpp"
#include "matshare/error.hpp"

int main(int argc, char** argv) {
  using namespace matshare::cli;

  CLI::App app{"Matrix-product secret sharing simulator"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed_flag;

  DealOptions deal;
  std::string k_range;
  std::string n_range;
  auto* deal_cmd = app.add_subcommand("deal", "Generate an instance and shares");
  deal_cmd->add_option("--workspace,--out,-w", deal.workspace, "Output directory");
  deal_cmd->add_option("--r", deal.r, "Matrix dimension")->required();
  deal_cmd->add_option("--k", deal.k, "Size of the public matrix set");
  deal_cmd->add_option("--n", deal.n, "Number of participants");
  deal_cmd->add_option("--entry-bound", deal.entry_bound,
                       "Entries are uniform over [0, bound)");
  deal_cmd->add_option("--k-range", k_range, "Draw k uniformly from lo:hi");
  deal_cmd->add_option("--n-range", n_range, "Draw n uniformly from lo:hi");
  deal_cmd->add_option("--seed", seed_flag, "Seed (default $MATSHARE_SEED)");

  RunOptions run;
  std::optional<std::string> cheat;
  auto* run_cmd = app.add_subcommand("run", "Verify and reconstruct the secret");
  run_cmd->add_option("--workspace,-w", run.workspace, "Dealt workspace");
  run_cmd->add_option("--start", run.start, "Ring position that starts");
  run_cmd->add_option("--cheat", cheat, "Forge a shadow: position:forge-seed");
  run_cmd->add_option("--t", run.t, "Freivalds iterations for the audit");
  run_cmd->add_option("--entry-bound", run.entry_bound,
                      "Range for blinding and forged matrices");
  run_cmd->add_option("--seed", seed_flag, "Seed (default $MATSHARE_SEED)");

  AuditOptions audit;
  auto* audit_cmd = app.add_subcommand("audit", "Freivalds-check the transcript");
  audit_cmd->add_option("--workspace,-w", audit.workspace, "Dealt workspace");
  audit_cmd->add_option("--t", audit.t, "Freivalds iterations");
  audit_cmd->add_option("--seed", seed_flag, "Seed (default $MATSHARE_SEED)");

  AttackOptions attack;
  std::optional<std::size_t> limit;
  auto* attack_cmd = app.add_subcommand("attack", "Brute-force the instance");
  attack_cmd->add_option("--workspace,-w", attack.workspace, "Dealt workspace");
  attack_cmd->add_option("--mode", attack.mode, "distinct or repetition");
  attack_cmd->add_option("--limit", limit, "Stop after this many solutions");
  attack_cmd->add_flag("--count-only", attack.count_only,
                       "Only report search-space sizes");
  attack_cmd->add_flag("--override", attack.override_guardrail,
                       "Enumerate beyond the size guardrail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*deal_cmd) {
      deal.seed = resolve_seed(seed_flag);
      if (!k_range.empty()) deal.k_range = parse_range(k_range);
      if (!n_range.empty()) deal.n_range = parse_range(n_range);
      return cmd_deal(deal, std::cout, std::cerr);
    }
    if (*run_cmd) {
      run.seed = resolve_seed(seed_flag);
      run.cheat = cheat;
      return cmd_run(run, std::cout, std::cerr);
    }
    if (*audit_cmd) {
      audit.seed = resolve_seed(seed_flag);
      return cmd_audit(audit, std::cout, std::cerr);
    }
    attack.limit = limit;
    return cmd_attack(attack, std::cout, std::cerr);
  } catch (const matshare::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
