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

#pragma once

// Subcommands of the matshare tool, callable in-process. Each returns the
// process exit status and writes human-readable output to `out` / `err`.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "matshare/dealer.hpp"
#include "matshare/random.hpp"

namespace matshare::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitForgery = 2,
  kExitIntegrity = 3,
  kExitGuardrail = 4,
  kExitUsage = 64,
};

inline constexpr const char* kSeedEnvVar = "MATSHARE_SEED";

// Explicit flag value if given, else $MATSHARE_SEED, else 0.
Seed resolve_seed(std::optional<std::uint64_t> flag);

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

// "lo:hi" with lo <= hi.
Range parse_range(const std::string& text);

struct DealOptions {
  std::filesystem::path workspace = ".";
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  std::uint64_t entry_bound = kDefaultEntryBound;
  Seed seed;
  // Sampling mode: when set, k / n are drawn uniformly from these ranges
  // before dealing.
  std::optional<Range> k_range;
  std::optional<Range> n_range;
};

struct RunOptions {
  std::filesystem::path workspace = ".";
  std::size_t start = 1;
  std::optional<std::string> cheat;  // "position:forge-seed"
  unsigned t = 10;
  std::uint64_t entry_bound = kDefaultEntryBound;
  Seed seed;
};

struct AuditOptions {
  std::filesystem::path workspace = ".";
  unsigned t = 10;
  Seed seed;
};

struct AttackOptions {
  std::filesystem::path workspace = ".";
  std::string mode = "distinct";  // "distinct" or "repetition"
  std::optional<std::size_t> limit;
  bool count_only = false;
  bool override_guardrail = false;
};

// Writes bulletin.json, instance.json and shares/P<j>.json.
int cmd_deal(const DealOptions& options, std::ostream& out, std::ostream& err);

// Verification then reconstruction from options.start; appends the session
// to transcript.json (cmd_deal starts a fresh log).
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

// Public Freivalds audit of every reconstruction round in transcript.json.
int cmd_audit(const AuditOptions& options, std::ostream& out,
              std::ostream& err);

// Writes attack_report.json.
int cmd_attack(const AttackOptions& options, std::ostream& out,
               std::ostream& err);

}  // namespace matshare::cli
