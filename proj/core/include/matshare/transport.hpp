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

// Deterministic in-memory message fabric for protocol simulation.
//
// Delivery is synchronous, loss-free and FIFO. Every envelope lands in the
// run's Transcript; Public envelopes additionally form the eavesdropper view,
// the record of what a passive global observer learns.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "matshare/algebra.hpp"

namespace matshare {

// Ring position, 1-based. Doubles as the participant's identity.
using ParticipantId = std::size_t;

class Address {
 public:
  enum class Kind { kDealer, kParticipant, kBroadcast };

  static Address dealer() { return Address(Kind::kDealer, 0); }
  static Address participant(ParticipantId id) {
    return Address(Kind::kParticipant, id);
  }
  static Address broadcast() { return Address(Kind::kBroadcast, 0); }

  // "dealer", "P<j>" or "broadcast". parse() is the inverse.
  std::string label() const;
  static Address parse(std::string_view label);

  Kind kind() const { return kind_; }
  ParticipantId id() const { return id_; }
  bool is_participant() const { return kind_ == Kind::kParticipant; }

  friend bool operator==(const Address&, const Address&) = default;

 private:
  Address(Kind kind, ParticipantId id) : kind_(kind), id_(id) {}

  Kind kind_;
  ParticipantId id_;
};

enum class Visibility { kPublic, kSecure };

enum class MessageKind {
  kShareIndex,   // dealer -> participant, pointer into the public set
  kCheckVector,  // dealer -> participant, private U_j
  kChainVector,  // verification chain hop
  kVerdict,      // last participant's verification result
  kAbort,        // round aborted (malformed message)
  kReveal,       // reconstruction chain hop, broadcast
  kHandBack,     // last participant returns the final product to the starter
  kRecovered,    // starter's local record of the recovered secret
};

std::string_view to_string(Visibility v);
std::string_view to_string(MessageKind kind);
Visibility parse_visibility(std::string_view text);
MessageKind parse_message_kind(std::string_view text);

struct Verdict {
  bool accepted = false;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct IndexPointer {
  std::size_t index = 0;
  friend bool operator==(const IndexPointer&, const IndexPointer&) = default;
};

using Payload =
    std::variant<Matrix, Vector, BinaryVector, Verdict, IndexPointer>;

struct Envelope {
  std::size_t step = 0;
  Address from = Address::dealer();
  Address to = Address::broadcast();
  Visibility visibility = Visibility::kPublic;
  MessageKind kind = MessageKind::kVerdict;
  Payload payload = Verdict{};

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

class Transcript {
 public:
  Transcript() = default;
  explicit Transcript(std::vector<Envelope> envelopes);

  void append(Envelope envelope);
  const std::vector<Envelope>& envelopes() const { return envelopes_; }
  std::size_t size() const { return envelopes_.size(); }
  bool empty() const { return envelopes_.empty(); }

  // Public envelopes only, order preserved.
  std::vector<Envelope> eavesdropper_view() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;

 private:
  std::vector<Envelope> envelopes_;
};

class Network {
 public:
  using Handler = std::function<void(const Envelope&)>;

  // Participants are P1..P<participants>. Steps are numbered from first_step.
  explicit Network(std::size_t participants, std::size_t first_step = 0);

  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  // Installs (or, with an empty handler, removes) the delivery callback of
  // one participant.
  void attach(ParticipantId id, Handler handler);
  void detach_all();

  // Registers a callback for every Public envelope as it is delivered.
  // Returns a token for remove_observer().
  std::size_t observe_public(Handler observer);
  void remove_observer(std::size_t token);

  // Queues an envelope and returns its step. A send made from outside any
  // handler drains the queue before returning; sends made inside handlers
  // are delivered after everything queued before them.
  std::size_t send(Address from, Address to, Visibility visibility,
                   MessageKind kind, Payload payload);
  std::size_t broadcast(Address from, MessageKind kind, Payload payload);

  std::size_t participants() const { return participants_; }
  const Transcript& transcript() const { return transcript_; }
  Transcript take_transcript() { return std::move(transcript_); }

 private:
  void check_endpoint(const Address& a, bool as_recipient) const;
  void pump();
  void deliver(const Envelope& envelope);

  std::size_t participants_;
  std::size_t next_step_;
  std::map<ParticipantId, Handler> handlers_;
  std::map<std::size_t, Handler> public_observers_;
  std::size_t next_observer_ = 0;
  Transcript transcript_;
  std::size_t delivered_ = 0;  // index into transcript_ of next delivery
  bool pumping_ = false;
};

}  // namespace matshare
