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

#include "commands.hpp"

#include <charconv>
#include <cstdlib>
#include <ostream>
#include <string_view>
#include <vector>

#include "matshare/attack.hpp"
#include "matshare/error.hpp"
#include "matshare/formats.hpp"
#include "matshare/protocol.hpp"

namespace matshare::cli {
namespace fs = std::filesystem;
namespace {

constexpr std::uint64_t kAuditSeedMix = 0x9e3779b97f4a7c15ULL;

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T value{};
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw UsageError(std::string("invalid ") + what + " '" +
                     std::string(text) + "'");
  }
  return value;
}

fs::path share_path(const fs::path& workspace, std::size_t j) {
  return workspace / "shares" / ("P" + std::to_string(j) + ".json");
}

struct Workspace {
  Bulletin bulletin;
  std::vector<Share> shares;
};

// Loads the public bulletin and every share file. Never touches
// instance.json.
Workspace load_participant_view(const fs::path& workspace) {
  if (!fs::is_directory(workspace)) {
    throw UsageError("workspace " + workspace.string() + " does not exist");
  }
  Workspace ws{formats::read_bulletin(
                   formats::read_file(workspace / "bulletin.json")),
               {}};
  for (std::size_t j = 1; j <= ws.bulletin.n; ++j) {
    ws.shares.push_back(
        formats::read_share(formats::read_file(share_path(workspace, j))));
    if (ws.shares.back().participant != j) {
      throw FormatError("share file P" + std::to_string(j) +
                        ".json belongs to another participant");
    }
  }
  return ws;
}

}  // namespace

Seed resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return Seed{*flag};
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr) {
    return Seed{parse_number<std::uint64_t>(env, kSeedEnvVar)};
  }
  return Seed{0};
}

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw UsageError("range '" + text + "' must look like lo:hi");
  }
  const std::string_view view(text);
  Range range{parse_number<std::size_t>(view.substr(0, colon), "range"),
              parse_number<std::size_t>(view.substr(colon + 1), "range")};
  if (range.lo > range.hi) throw UsageError("range '" + text + "' is empty");
  return range;
}

int cmd_deal(const DealOptions& options, std::ostream& out,
             std::ostream& err) {
  try {
    DealerParams params{options.r, options.k, options.n, options.entry_bound,
                        options.seed};
    if (options.k_range || options.n_range) {
      Rng rng(options.seed);
      if (options.n_range) {
        const Range nr = *options.n_range;
        params.n = nr.lo + rng.uniform(nr.hi - nr.lo + 1);
      }
      if (options.k_range) {
        const Range kr{std::max(options.k_range->lo, params.n),
                       options.k_range->hi};
        if (kr.lo > kr.hi) throw UsageError("n <= k required by the k range");
        params.k = kr.lo + rng.uniform(kr.hi - kr.lo + 1);
      }
    }

    const Deal deal = generate_instance(params);

    fs::create_directories(options.workspace / "shares");
    for (const auto& entry : fs::directory_iterator(options.workspace / "shares")) {
      if (entry.path().extension() == ".json") fs::remove(entry.path());
    }
    fs::remove(options.workspace / "transcript.json");
    fs::remove(options.workspace / "attack_report.json");

    formats::write_file(options.workspace / "bulletin.json",
                        formats::write_bulletin(deal.bulletin));
    formats::write_file(options.workspace / "instance.json",
                        formats::write_instance(deal.instance));
    for (const Share& share : deal.shares) {
      formats::write_file(share_path(options.workspace, share.participant),
                          formats::write_share(share));
    }
    out << "dealt r=" << params.r << " k=" << params.k << " n=" << params.n
        << " into " << options.workspace.string() << "\n";
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  Workspace ws;
  std::optional<CheaterSpec> cheater;
  try {
    ws = load_participant_view(options.workspace);
    if (options.start < 1 || options.start > ws.bulletin.n) {
      throw UsageError("start " + std::to_string(options.start) +
                       " outside [1, " + std::to_string(ws.bulletin.n) + "]");
    }
    if (options.t < 1) throw UsageError("t >= 1 required");
    if (options.cheat) {
      const std::string& spec = *options.cheat;
      const auto colon = spec.find(':');
      if (colon == std::string::npos) {
        throw UsageError("cheat spec must look like position:forge-seed");
      }
      const std::string_view view(spec);
      const auto position =
          parse_number<std::size_t>(view.substr(0, colon), "cheat position");
      const auto forge_seed =
          parse_number<std::uint64_t>(view.substr(colon + 1), "forge seed");
      cheater = make_cheater(ws.bulletin, ws.shares, position,
                             Seed{forge_seed}, options.entry_bound);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    SessionOutcome outcome = run_session(ws.bulletin, ws.shares, options.start,
                                         cheater, options.seed);
    // Each run extends the workspace log; steps continue where it stopped.
    const fs::path log_path = options.workspace / "transcript.json";
    Transcript log;
    if (fs::exists(log_path)) {
      log = formats::read_transcript(formats::read_file(log_path));
    }
    const auto offset = log.empty() ? 0 : log.envelopes().back().step + 1;
    for (Envelope e : outcome.transcript.envelopes()) {
      e.step += offset;
      log.append(std::move(e));
    }
    formats::write_file(log_path, formats::write_transcript(log));
    if (!outcome.verification.verdict) {
      out << "FORGERY DETECTED at verification";
      if (outcome.verification.abort_reason) {
        out << " (" << *outcome.verification.abort_reason << ")";
      }
      out << "\n";
      return kExitForgery;
    }
    if (!freivalds_audit(outcome.transcript, ws.bulletin, options.t,
                         Seed{options.seed.value ^ kAuditSeedMix})) {
      err << "INTEGRITY FAILURE: public reveals are inconsistent\n";
      return kExitIntegrity;
    }
    out << "verification passed from P" << options.start << "\n";
    out << "recovered secret digest: "
        << formats::matrix_digest(*outcome.recovered) << "\n";
    return kExitOk;
  } catch (const IntegrityFailure& e) {
    err << "INTEGRITY FAILURE: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const SingularMatrix& e) {
    err << "INTEGRITY FAILURE: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_audit(const AuditOptions& options, std::ostream& out,
              std::ostream& err) {
  try {
    if (options.t < 1) throw UsageError("t >= 1 required");
    const Bulletin bulletin = formats::read_bulletin(
        formats::read_file(options.workspace / "bulletin.json"));
    const Transcript log = formats::read_transcript(
        formats::read_file(options.workspace / "transcript.json"));
    const auto rounds = reveal_rounds(log.envelopes(), bulletin.n);
    if (rounds.empty()) {
      throw UsageError("transcript holds no reconstruction round");
    }
    if (!freivalds_audit(log, bulletin, options.t, options.seed)) {
      err << "INTEGRITY FAILURE: public reveals are inconsistent\n";
      return kExitIntegrity;
    }
    out << "audited " << rounds.size() << " reconstruction round(s) with t="
        << options.t << ": consistent\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_attack(const AttackOptions& options, std::ostream& out,
               std::ostream& err) {
  try {
    if (!fs::is_directory(options.workspace)) {
      throw UsageError("workspace " + options.workspace.string() +
                       " does not exist");
    }
    const Bulletin bulletin = formats::read_bulletin(
        formats::read_file(options.workspace / "bulletin.json"));

    formats::AttackReport report;
    report.multiset =
        count_search_space(bulletin.k, bulletin.n, SpaceMode::kMultiset);
    report.ordered_distinct = count_search_space(bulletin.k, bulletin.n,
                                                 SpaceMode::kOrderedDistinct);
    report.ordered_rep = count_search_space(
        bulletin.k, bulletin.n, SpaceMode::kOrderedWithRepetition);
    out << "search space: multiset=" << report.multiset.get_str()
        << " ordered_distinct=" << report.ordered_distinct.get_str()
        << " ordered_rep=" << report.ordered_rep.get_str() << "\n";

    if (options.count_only) {
      report.mode = "count_only";
    } else {
      SearchMode mode;
      if (options.mode == "distinct") {
        mode = SearchMode::kOrderedDistinct;
        report.mode = "ordered_distinct";
      } else if (options.mode == "repetition") {
        mode = SearchMode::kOrderedWithRepetition;
        report.mode = "ordered_rep";
      } else {
        throw UsageError("unknown mode '" + options.mode + "'");
      }

      // Target: the dealer's secret, or failing that the secret a
      // participant recorded in the transcript.
      const fs::path instance_path = options.workspace / "instance.json";
      const fs::path transcript_path = options.workspace / "transcript.json";
      std::optional<Matrix> target;
      if (fs::exists(instance_path)) {
        target = formats::read_instance(formats::read_file(instance_path),
                                        bulletin)
                     .secret;
      } else if (fs::exists(transcript_path)) {
        const Transcript t =
            formats::read_transcript(formats::read_file(transcript_path));
        for (const Envelope& e : t.envelopes()) {
          if (e.kind == MessageKind::kRecovered) {
            target = std::get<Matrix>(e.payload);
          }
        }
      }
      if (!target) {
        throw UsageError("no target: need instance.json or a transcript "
                         "with a recovered secret");
      }

      const SearchResult result = exhaustive_search(
          SearchProblem{bulletin.matrices, bulletin.n, *target}, mode,
          options.limit, options.override_guardrail);
      report.solutions = result.solutions;
      report.nodes_explored = result.nodes_explored;
      report.elapsed_ms =
          std::chrono::duration<double, std::milli>(result.elapsed).count();
      out << "explored " << result.nodes_explored << " sequences, "
          << result.solutions.size() << " solution(s)\n";

      if (fs::exists(transcript_path)) {
        const Transcript t =
            formats::read_transcript(formats::read_file(transcript_path));
        const RatioReport ratios =
            ratio_analysis(t.eavesdropper_view(), bulletin);
        for (const RatioFinding& f : ratios.findings) {
          if (f.matrix_index) {
            report.ratio_hits.push_back({f.position, *f.matrix_index});
          }
        }
        out << "ratio analysis exposed " << report.ratio_hits.size()
            << " shadow(s)\n";
      }
    }

    formats::write_file(options.workspace / "attack_report.json",
                        formats::write_attack_report(report));
    return kExitOk;
  } catch (const GuardrailExceeded& e) {
    err << "refused: " << e.what() << " (override with --override)\n";
    return kExitGuardrail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace matshare::cli
