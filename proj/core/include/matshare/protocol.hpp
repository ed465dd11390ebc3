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

// Ring protocol run by the share holders: circular-shift verification of
// the check vectors, then blinded reconstruction of the secret.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "matshare/algebra.hpp"
#include "matshare/dealer.hpp"
#include "matshare/random.hpp"
#include "matshare/transport.hpp"

namespace matshare {

enum class Phase { kIdle, kVerifying, kReconstructing, kDone };

struct ParticipantState {
  Share share;
  Phase phase = Phase::kIdle;
  std::optional<std::variant<Vector, Matrix>> pending;  // last value computed
  std::optional<Matrix> x_blind;    // only on the starter of a reconstruction
  std::optional<Matrix> recovered;  // always integral when set
  std::optional<bool> verdict;      // last verification verdict heard
  std::optional<ParticipantId> verified_start;
};

std::vector<ParticipantState> make_states(std::span<const Share> shares);

// Successor of ring position j among n positions.
constexpr ParticipantId ring_successor(ParticipantId j, std::size_t n) {
  return j % n + 1;
}

enum class RoundKind { kVerification, kReconstruction };

struct RoundPlan {
  RoundKind kind = RoundKind::kVerification;
  ParticipantId start = 1;
  std::vector<ParticipantId> order;  // start, start+1, ... with wraparound

  static RoundPlan make(RoundKind kind, ParticipantId start, std::size_t n);
};

struct CheaterSpec {
  ParticipantId position = 0;
  Matrix forged;
};

// Forged shadow for `position`: uniform random matrix, redrawn until it
// differs from the genuine one.
CheaterSpec make_cheater(const Bulletin& bulletin,
                         std::span<const Share> shares, ParticipantId position,
                         Seed forge_seed,
                         std::uint64_t entry_bound = kDefaultEntryBound);

struct VerificationResult {
  bool verdict = false;
  std::optional<Vector> final_vector;
  std::optional<std::string> abort_reason;
};

// The starter multiplies its shadow into its private U_i and passes the
// vector along the ring; the last participant compares against the
// published U'_i and broadcasts the verdict. A malformed hop aborts the
// round with a broadcast abort message and a false verdict.
VerificationResult run_verification(
    const RoundPlan& plan, std::vector<ParticipantState>& states,
    Bulletin& bulletin, Network& network,
    const std::optional<CheaterSpec>& cheater = std::nullopt);

// Blinded reconstruction starting at plan.start. Requires a passed
// verification for the same start. Every hop is broadcast and appended to
// bulletin.reveals. Returns the secret recovered by the starter.
Matrix run_reconstruction(const RoundPlan& plan,
                          std::vector<ParticipantState>& states,
                          Bulletin& bulletin, Network& network, Rng& rng,
                          std::uint64_t blind_bound = kDefaultEntryBound);

// (c x^-1)(b c^-1). With b = R_i x and c = A_sigma(n)...A_sigma(i) x this is
// the secret. Throws SingularMatrix if c or x is singular and
// IntegrityFailure if the result is not an integer matrix.
Matrix recover_secret(const Matrix& b, const Matrix& c, const Matrix& x);

// The reconstruction broadcasts of one round, in order, plus the hand-back
// that closed it (absent for an interrupted round).
struct RevealRound {
  std::vector<Envelope> reveals;
  std::optional<Envelope> hand_back;
};

// Splits a message log into reconstruction rounds of an n-participant ring.
std::vector<RevealRound> reveal_rounds(std::span<const Envelope> envelopes,
                                       std::size_t n);

// Public consistency audit of every reconstruction round in the transcript.
// For each consecutive pair of reveals (V, W) some matrix S of the public
// set must satisfy S V == W, checked with freivalds_verify at t iterations
// rather than by forming products. The hand-back must repeat the final
// reveal and the senders must follow the ring. Returns false if any check
// fails or the transcript holds no complete round.
bool freivalds_audit(const Transcript& transcript, const Bulletin& bulletin,
                     unsigned t, Seed seed);

// Share delivery, verification and (if it passes) reconstruction on a fresh
// network.
struct SessionOutcome {
  VerificationResult verification;
  std::optional<Matrix> recovered;
  Transcript transcript;
};

SessionOutcome run_session(const Bulletin& bulletin,
                           std::span<const Share> shares, ParticipantId start,
                           const std::optional<CheaterSpec>& cheater,
                           Seed seed);

}  // namespace matshare
