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

#include "matshare/protocol.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "matshare/error.hpp"

namespace matshare {
namespace {

// Detaches round handlers and observers however the round ends.
class RoundScope {
 public:
  explicit RoundScope(Network& network) : network_(network) {}
  ~RoundScope() {
    network_.detach_all();
    for (std::size_t token : observers_) network_.remove_observer(token);
  }
  RoundScope(const RoundScope&) = delete;
  RoundScope& operator=(const RoundScope&) = delete;

  void watch(std::size_t token) { observers_.push_back(token); }

 private:
  Network& network_;
  std::vector<std::size_t> observers_;
};

void check_plan(const RoundPlan& plan, RoundKind kind, std::size_t n) {
  if (plan.kind != kind) throw UsageError("round plan has the wrong kind");
  if (plan.start < 1 || plan.start > n) {
    throw UsageError("start position " + std::to_string(plan.start) +
                     " outside [1, " + std::to_string(n) + "]");
  }
  if (plan.order != RoundPlan::make(kind, plan.start, n).order) {
    throw UsageError("round order must walk the ring once from the start");
  }
}

// Position of `id` in the round order, and its neighbours there.
struct Hop {
  bool is_first;
  bool is_last;
  ParticipantId previous;
  ParticipantId next;
};

Hop hop_of(const RoundPlan& plan, ParticipantId id) {
  const auto it = std::find(plan.order.begin(), plan.order.end(), id);
  const std::size_t pos = static_cast<std::size_t>(it - plan.order.begin());
  const std::size_t n = plan.order.size();
  return Hop{pos == 0, pos + 1 == n, plan.order[(pos + n - 1) % n],
             plan.order[(pos + 1) % n]};
}

}  // namespace

std::vector<ParticipantState> make_states(std::span<const Share> shares) {
  std::vector<ParticipantState> states;
  states.reserve(shares.size());
  for (std::size_t j = 0; j < shares.size(); ++j) {
    if (shares[j].participant != j + 1) {
      throw UsageError("shares must be ordered by ring position");
    }
    ParticipantState state;
    state.share = shares[j];
    states.push_back(std::move(state));
  }
  return states;
}

RoundPlan RoundPlan::make(RoundKind kind, ParticipantId start, std::size_t n) {
  if (n == 0 || start < 1 || start > n) {
    throw UsageError("start position " + std::to_string(start) +
                     " outside [1, " + std::to_string(n) + "]");
  }
  RoundPlan plan{kind, start, {}};
  plan.order.reserve(n);
  ParticipantId p = start;
  for (std::size_t i = 0; i < n; ++i, p = ring_successor(p, n)) {
    plan.order.push_back(p);
  }
  return plan;
}

CheaterSpec make_cheater(const Bulletin& bulletin,
                         std::span<const Share> shares, ParticipantId position,
                         Seed forge_seed, std::uint64_t entry_bound) {
  if (position < 1 || position > shares.size()) {
    throw UsageError("cheater position " + std::to_string(position) +
                     " outside the ring");
  }
  const Matrix& genuine =
      bulletin.matrix(shares[position - 1].matrix_index);
  Rng rng(forge_seed);
  for (std::size_t attempt = 0; attempt < kMaxInvertibleAttempts; ++attempt) {
    Matrix forged = sample_matrix(bulletin.r, entry_bound, rng);
    if (!(forged == genuine)) return CheaterSpec{position, std::move(forged)};
  }
  throw GenerationFailure("could not draw a forged shadow");
}

VerificationResult run_verification(const RoundPlan& plan,
                                    std::vector<ParticipantState>& states,
                                    Bulletin& bulletin, Network& network,
                                    const std::optional<CheaterSpec>& cheater) {
  const std::size_t n = states.size();
  check_plan(plan, RoundKind::kVerification, n);
  if (network.participants() != n) {
    throw UsageError("network size does not match the ring");
  }
  const Vector& expected = bulletin.u_prime.at(plan.start - 1);

  auto shadow_of = [&](ParticipantId id) -> const Matrix& {
    if (cheater && cheater->position == id) return cheater->forged;
    return bulletin.matrix(states[id - 1].share.matrix_index);
  };

  VerificationResult result;
  RoundScope scope(network);
  scope.watch(network.observe_public(
      [&bulletin](const Envelope& e) { bulletin.reveals.push_back(e); }));

  auto abort_round = [&](ParticipantId id, const std::string& why) {
    result.abort_reason = "P" + std::to_string(id) + ": " + why;
    network.broadcast(Address::participant(id), MessageKind::kAbort,
                      Verdict{false});
  };

  for (ParticipantId id = 1; id <= n; ++id) {
    ParticipantState& state = states[id - 1];
    state.phase = Phase::kVerifying;
    state.verdict.reset();
    state.verified_start.reset();
    const Hop hop = hop_of(plan, id);
    network.attach(id, [&, id, hop](const Envelope& e) {
      ParticipantState& self = states[id - 1];
      if (e.kind == MessageKind::kVerdict || e.kind == MessageKind::kAbort) {
        const bool accepted = std::get<Verdict>(e.payload).accepted &&
                              e.kind == MessageKind::kVerdict;
        self.verdict = accepted;
        if (accepted) self.verified_start = plan.start;
        self.phase = Phase::kIdle;
        return;
      }
      if (e.kind != MessageKind::kChainVector || e.to != Address::participant(id)) {
        return;
      }
      const Vector* incoming = std::get_if<Vector>(&e.payload);
      if (incoming == nullptr) {
        abort_round(id, "chain message is not a vector");
        return;
      }
      Vector v(1);
      try {
        v = mat_vec_mul(shadow_of(id), *incoming);
      } catch (const UsageError& err) {
        abort_round(id, err.what());
        return;
      }
      self.pending = v;
      if (hop.is_last) {
        const bool ok = v == expected;
        result.final_vector = v;
        network.broadcast(Address::participant(id), MessageKind::kVerdict,
                          Verdict{ok});
      } else {
        network.send(Address::participant(id), Address::participant(hop.next),
                     Visibility::kPublic, MessageKind::kChainVector,
                     std::move(v));
      }
    });
  }

  ParticipantState& starter = states[plan.start - 1];
  const Hop first = hop_of(plan, plan.start);
  try {
    Vector v = mat_vec_mul(shadow_of(plan.start), starter.share.u);
    starter.pending = v;
    network.send(Address::participant(plan.start),
                 Address::participant(first.next), Visibility::kPublic,
                 MessageKind::kChainVector, std::move(v));
  } catch (const UsageError& err) {
    abort_round(plan.start, err.what());
  }

  result.verdict = starter.verdict.value_or(false);
  return result;
}

Matrix run_reconstruction(const RoundPlan& plan,
                          std::vector<ParticipantState>& states,
                          Bulletin& bulletin, Network& network, Rng& rng,
                          std::uint64_t blind_bound) {
  const std::size_t n = states.size();
  check_plan(plan, RoundKind::kReconstruction, n);
  if (network.participants() != n) {
    throw UsageError("network size does not match the ring");
  }
  for (const ParticipantState& state : states) {
    if (state.verified_start != plan.start || state.verdict != true) {
      throw UsageError("reconstruction from P" + std::to_string(plan.start) +
                       " requires a passed verification from the same start");
    }
  }

  auto shadow_of = [&](ParticipantId id) -> const Matrix& {
    return bulletin.matrix(states[id - 1].share.matrix_index);
  };

  RoundScope scope(network);
  scope.watch(network.observe_public(
      [&bulletin](const Envelope& e) { bulletin.reveals.push_back(e); }));

  ParticipantState& starter = states[plan.start - 1];
  starter.x_blind = sample_invertible_matrix(bulletin.r, blind_bound, rng);
  starter.recovered.reset();

  for (ParticipantId id = 1; id <= n; ++id) {
    states[id - 1].phase = Phase::kReconstructing;
    const Hop hop = hop_of(plan, id);
    network.attach(id, [&, id, hop](const Envelope& e) {
      ParticipantState& self = states[id - 1];
      if (e.kind == MessageKind::kReveal && !hop.is_first &&
          e.from == Address::participant(hop.previous)) {
        Matrix product = mat_mul(shadow_of(id), std::get<Matrix>(e.payload));
        self.pending = product;
        self.phase = Phase::kDone;
        network.broadcast(Address::participant(id), MessageKind::kReveal,
                          product);
        if (hop.is_last) {
          network.send(Address::participant(id),
                       Address::participant(plan.start), Visibility::kPublic,
                       MessageKind::kHandBack, std::move(product));
        }
        return;
      }
      if (e.kind == MessageKind::kHandBack && hop.is_first &&
          e.to == Address::participant(id)) {
        // C is the broadcast of ring position n, the most recent one.
        const Address position_n = Address::participant(n);
        const auto it = std::find_if(
            bulletin.reveals.rbegin(), bulletin.reveals.rend(),
            [&](const Envelope& r) {
              return r.kind == MessageKind::kReveal && r.from == position_n;
            });
        if (it == bulletin.reveals.rend()) {
          throw IntegrityFailure("no reveal from P" + std::to_string(n));
        }
        Matrix secret = recover_secret(std::get<Matrix>(e.payload),
                                       std::get<Matrix>(it->payload),
                                       *self.x_blind);
        self.recovered = secret;
        self.pending = std::get<Matrix>(e.payload);
        self.phase = Phase::kDone;
        network.send(Address::participant(id), Address::participant(id),
                     Visibility::kSecure, MessageKind::kRecovered,
                     std::move(secret));
      }
    });
  }

  Matrix first = mat_mul(shadow_of(plan.start), *starter.x_blind);
  starter.pending = first;
  network.broadcast(Address::participant(plan.start), MessageKind::kReveal,
                    std::move(first));

  if (!starter.recovered) {
    throw IntegrityFailure("reconstruction round ended without a result");
  }
  return *starter.recovered;
}

Matrix recover_secret(const Matrix& b, const Matrix& c, const Matrix& x) {
  if (b.dim() != c.dim() || c.dim() != x.dim()) {
    throw UsageError("recover_secret: dimension mismatch");
  }
  Matrix result(b.dim());
  if (b.is_integral() && c.is_integral() && x.is_integral()) {
    // x^-1 = adj_x / dx and c^-1 = adj_c / dc, so the result is
    // (c adj_x)(b adj_c) / (dx dc) with one division at the end.
    const ScaledInverse x_inv = scaled_inverse(x);
    const ScaledInverse c_inv = scaled_inverse(c);
    const Matrix left = mat_mul(c, x_inv.numerator);
    const Matrix right = mat_mul(b, c_inv.numerator);
    result = mat_mul(left, right);
    const Integer scale = x_inv.denominator * c_inv.denominator;
    for (std::size_t i = 0; i < result.dim(); ++i) {
      for (std::size_t j = 0; j < result.dim(); ++j) {
        Scalar& cell = result(i, j);
        cell = Scalar(cell.get_num(), scale);
        cell.canonicalize();
      }
    }
  } else {
    result = mat_mul(mat_mul(c, mat_inverse(x)), mat_mul(b, mat_inverse(c)));
  }
  if (!result.is_integral()) {
    throw IntegrityFailure("recovered matrix is not integral");
  }
  return result;
}

std::vector<RevealRound> reveal_rounds(std::span<const Envelope> envelopes,
                                       std::size_t n) {
  std::vector<RevealRound> rounds;
  bool open = false;
  for (const Envelope& e : envelopes) {
    if (e.kind == MessageKind::kReveal) {
      const bool continues =
          open && !rounds.back().reveals.empty() &&
          rounds.back().reveals.size() < n && e.from.is_participant() &&
          e.from.id() ==
              ring_successor(rounds.back().reveals.back().from.id(), n);
      if (!continues) {
        rounds.emplace_back();
        open = true;
      }
      rounds.back().reveals.push_back(e);
    } else if (e.kind == MessageKind::kHandBack && open) {
      rounds.back().hand_back = e;
      open = false;
    }
  }
  return rounds;
}

bool freivalds_audit(const Transcript& transcript, const Bulletin& bulletin,
                     unsigned t, Seed seed) {
  if (t == 0) throw UsageError("freivalds_audit: t must be at least 1");
  Rng rng(seed);
  std::size_t audited = 0;
  for (const RevealRound& round :
       reveal_rounds(transcript.envelopes(), bulletin.n)) {
    if (!round.hand_back) continue;
    const auto& reveals = round.reveals;
    if (reveals.size() != bulletin.n) return false;
    const Envelope& last = reveals.back();
    if (round.hand_back->from != last.from ||
        round.hand_back->to != reveals.front().from ||
        !(round.hand_back->payload == last.payload)) {
      return false;
    }
    for (std::size_t j = 0; j + 1 < reveals.size(); ++j) {
      const auto* v = std::get_if<Matrix>(&reveals[j].payload);
      const auto* w = std::get_if<Matrix>(&reveals[j + 1].payload);
      if (v == nullptr || w == nullptr) return false;
      bool explained = false;
      for (const Matrix& candidate : bulletin.matrices) {
        if (candidate.dim() != v->dim() || v->dim() != w->dim()) break;
        if (freivalds_verify(candidate, *v, *w, t, rng.derive())) {
          explained = true;
          break;
        }
      }
      if (!explained) return false;
    }
    ++audited;
  }
  return audited > 0;
}

SessionOutcome run_session(const Bulletin& bulletin,
                           std::span<const Share> shares, ParticipantId start,
                           const std::optional<CheaterSpec>& cheater,
                           Seed seed) {
  Bulletin board = bulletin;
  std::vector<ParticipantState> states = make_states(shares);
  Network network(states.size());
  distribute_shares(shares, network);

  SessionOutcome outcome;
  outcome.verification = run_verification(
      RoundPlan::make(RoundKind::kVerification, start, states.size()), states,
      board, network, cheater);
  if (outcome.verification.verdict) {
    Rng rng(seed);
    outcome.recovered = run_reconstruction(
        RoundPlan::make(RoundKind::kReconstruction, start, states.size()),
        states, board, network, rng);
  }
  outcome.transcript = network.take_transcript();
  return outcome;
}

}  // namespace matshare
