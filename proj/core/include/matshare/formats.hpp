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

// JSON artifacts exchanged between the dealer, the participants and the
// tooling. Big integers travel as decimal strings (a rational is "p/q").
// Writers are deterministic: equal inputs give byte-identical text, and
// read followed by write reproduces the input byte for byte.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "matshare/algebra.hpp"
#include "matshare/dealer.hpp"
#include "matshare/transport.hpp"

namespace matshare::formats {

inline constexpr int kBulletinVersion = 1;

std::string write_bulletin(const Bulletin& bulletin);
Bulletin read_bulletin(std::string_view text);

std::string write_share(const Share& share);
Share read_share(std::string_view text);

// Holds sigma and the secret only; the public set comes from the bulletin.
std::string write_instance(const Instance& instance);
Instance read_instance(std::string_view text, const Bulletin& bulletin);

std::string write_transcript(const Transcript& transcript);
Transcript read_transcript(std::string_view text);

struct RatioHit {
  std::size_t position = 0;
  std::size_t matrix_index = 0;
  friend bool operator==(const RatioHit&, const RatioHit&) = default;
};

struct AttackReport {
  std::string mode;  // "ordered_distinct", "ordered_rep" or "count_only"
  Integer multiset;
  Integer ordered_distinct;
  Integer ordered_rep;
  std::vector<std::vector<std::size_t>> solutions;
  std::vector<RatioHit> ratio_hits;
  std::uint64_t nodes_explored = 0;
  double elapsed_ms = 0;
};

std::string write_attack_report(const AttackReport& report);
AttackReport read_attack_report(std::string_view text);

// Stable 64-bit FNV-1a digest of the matrix's canonical JSON text, as hex.
std::string matrix_digest(const Matrix& m);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace matshare::formats
