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

#include "matshare/transport.hpp"

#include <array>
#include <charconv>
#include <utility>

#include "matshare/error.hpp"

namespace matshare {
namespace {

constexpr std::array<std::pair<MessageKind, std::string_view>, 8> kKindNames{{
    {MessageKind::kShareIndex, "share_index"},
    {MessageKind::kCheckVector, "check_vector"},
    {MessageKind::kChainVector, "chain_vector"},
    {MessageKind::kVerdict, "verdict"},
    {MessageKind::kAbort, "abort"},
    {MessageKind::kReveal, "reveal"},
    {MessageKind::kHandBack, "hand_back"},
    {MessageKind::kRecovered, "recovered"},
}};

}  // namespace

std::string Address::label() const {
  switch (kind_) {
    case Kind::kDealer:
      return "dealer";
    case Kind::kBroadcast:
      return "broadcast";
    case Kind::kParticipant:
      return "P" + std::to_string(id_);
  }
  return {};
}

Address Address::parse(std::string_view label) {
  if (label == "dealer") return dealer();
  if (label == "broadcast") return broadcast();
  if (label.size() >= 2 && label.front() == 'P') {
    ParticipantId id = 0;
    const auto* first = label.data() + 1;
    const auto* last = label.data() + label.size();
    auto [ptr, ec] = std::from_chars(first, last, id);
    if (ec == std::errc() && ptr == last && id > 0) return participant(id);
  }
  throw FormatError("unknown address label '" + std::string(label) + "'");
}

std::string_view to_string(Visibility v) {
  return v == Visibility::kPublic ? "public" : "secure";
}

std::string_view to_string(MessageKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

Visibility parse_visibility(std::string_view text) {
  if (text == "public") return Visibility::kPublic;
  if (text == "secure") return Visibility::kSecure;
  throw FormatError("unknown visibility '" + std::string(text) + "'");
}

MessageKind parse_message_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  throw FormatError("unknown message kind '" + std::string(text) + "'");
}

Transcript::Transcript(std::vector<Envelope> envelopes)
    : envelopes_(std::move(envelopes)) {
  for (std::size_t i = 1; i < envelopes_.size(); ++i) {
    if (envelopes_[i].step <= envelopes_[i - 1].step) {
      throw FormatError("transcript steps must strictly increase");
    }
  }
}

void Transcript::append(Envelope envelope) {
  if (!envelopes_.empty() && envelope.step <= envelopes_.back().step) {
    throw UsageError("transcript steps must strictly increase");
  }
  envelopes_.push_back(std::move(envelope));
}

std::vector<Envelope> Transcript::eavesdropper_view() const {
  std::vector<Envelope> view;
  for (const Envelope& e : envelopes_) {
    if (e.visibility == Visibility::kPublic) view.push_back(e);
  }
  return view;
}

Network::Network(std::size_t participants, std::size_t first_step)
    : participants_(participants), next_step_(first_step) {}

void Network::attach(ParticipantId id, Handler handler) {
  check_endpoint(Address::participant(id), true);
  if (handler) {
    handlers_[id] = std::move(handler);
  } else {
    handlers_.erase(id);
  }
}

void Network::detach_all() { handlers_.clear(); }

std::size_t Network::observe_public(Handler observer) {
  const std::size_t token = next_observer_++;
  public_observers_.emplace(token, std::move(observer));
  return token;
}

void Network::remove_observer(std::size_t token) {
  public_observers_.erase(token);
}

void Network::check_endpoint(const Address& a, bool as_recipient) const {
  if (a.is_participant() && (a.id() == 0 || a.id() > participants_)) {
    throw UsageError("unknown " +
                     std::string(as_recipient ? "recipient " : "sender ") +
                     a.label());
  }
  if (!as_recipient && a.kind() == Address::Kind::kBroadcast) {
    throw UsageError("broadcast is not a valid sender");
  }
}

std::size_t Network::send(Address from, Address to, Visibility visibility,
                          MessageKind kind, Payload payload) {
  check_endpoint(from, false);
  check_endpoint(to, true);
  if (to.kind() == Address::Kind::kBroadcast &&
      visibility != Visibility::kPublic) {
    throw UsageError("broadcasts are always public");
  }
  const std::size_t step = next_step_++;
  transcript_.append(
      Envelope{step, from, to, visibility, kind, std::move(payload)});
  if (!pumping_) pump();
  return step;
}

std::size_t Network::broadcast(Address from, MessageKind kind,
                               Payload payload) {
  return send(from, Address::broadcast(), Visibility::kPublic, kind,
              std::move(payload));
}

void Network::pump() {
  pumping_ = true;
  try {
    while (delivered_ < transcript_.size()) {
      // Copy: handlers may append and reallocate the transcript.
      const Envelope envelope = transcript_.envelopes()[delivered_++];
      deliver(envelope);
    }
  } catch (...) {
    pumping_ = false;
    delivered_ = transcript_.size();
    throw;
  }
  pumping_ = false;
}

void Network::deliver(const Envelope& envelope) {
  if (envelope.visibility == Visibility::kPublic) {
    for (const auto& [token, observer] : public_observers_) observer(envelope);
  }
  if (envelope.to.kind() == Address::Kind::kBroadcast) {
    for (ParticipantId id = 1; id <= participants_; ++id) {
      if (auto it = handlers_.find(id); it != handlers_.end()) {
        it->second(envelope);
      }
    }
  } else if (envelope.to.is_participant()) {
    if (auto it = handlers_.find(envelope.to.id()); it != handlers_.end()) {
      it->second(envelope);
    }
  }
}

}  // namespace matshare
