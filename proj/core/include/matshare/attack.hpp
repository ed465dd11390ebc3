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

// Oracles for the underlying search problem and for what a passive observer
// learns from the public reconstruction traffic. Desk scale only.

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "matshare/algebra.hpp"
#include "matshare/dealer.hpp"
#include "matshare/error.hpp"
#include "matshare/transport.hpp"

namespace matshare {

// Find n matrices of the set whose ordered product equals target. A
// sequence s_1..s_n stands for the product A_{s_n} ... A_{s_1}, the same
// convention the dealer uses for sigma.
struct SearchProblem {
  std::vector<Matrix> matrices;
  std::size_t n = 0;
  Matrix target;
};

enum class SearchMode { kOrderedDistinct, kOrderedWithRepetition };
enum class SpaceMode { kMultiset, kOrderedDistinct, kOrderedWithRepetition };

struct SearchResult {
  std::vector<std::vector<std::size_t>> solutions;  // lexicographic order
  std::size_t nodes_explored = 0;                   // complete sequences tried
  std::chrono::nanoseconds elapsed{0};
};

inline constexpr unsigned long kSearchGuardrail = 10'000'000;

// Raised when the enumeration space exceeds kSearchGuardrail and the caller
// did not override it.
class GuardrailExceeded : public UsageError {
 public:
  GuardrailExceeded(Integer space, const std::string& what)
      : UsageError(what), space_(std::move(space)) {}
  const Integer& space() const { return space_; }

 private:
  Integer space_;
};

// C(k+n-1, n) multisets, k!/(k-n)! ordered distinct, k^n with repetition.
// Requires 1 <= n <= k.
Integer count_search_space(std::size_t k, std::size_t n, SpaceMode mode);

// Exact enumeration of every ordered sequence in the chosen mode. Prefix
// products are shared between sequences but nothing is pruned. Stops after
// `limit` solutions when given.
SearchResult exhaustive_search(const SearchProblem& problem, SearchMode mode,
                               std::optional<std::size_t> limit = std::nullopt,
                               bool override_guardrail = false);

struct RatioFinding {
  ParticipantId position = 0;  // ring position whose shadow was exposed
  Matrix shadow;
  std::optional<std::size_t> matrix_index;  // match in the public set
};

struct RatioReport {
  std::vector<RatioFinding> findings;
  std::vector<ParticipantId> gaps;  // positions skipped for a singular V_j
};

// For consecutive reconstruction broadcasts V_j, V_{j+1} of a round,
// V_{j+1} V_j^-1 is the shadow of V_{j+1}'s sender. Every round present in
// the view is analysed.
RatioReport ratio_analysis(std::span<const Envelope> eavesdropper_view,
                           const Bulletin& bulletin);

}  // namespace matshare
