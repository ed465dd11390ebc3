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

// Trusted-party setup: builds a bounded matrix-representability instance
// whose hidden ordered product is the secret, plus the private shares and
// the public bulletin.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "matshare/algebra.hpp"
#include "matshare/random.hpp"
#include "matshare/transport.hpp"

namespace matshare {

inline constexpr std::uint64_t kDefaultEntryBound = 256;

struct DealerParams {
  std::size_t r = 0;  // matrix dimension
  std::size_t k = 0;  // size of the public set
  std::size_t n = 0;  // participants
  std::uint64_t entry_bound = kDefaultEntryBound;
  Seed seed;

  // Throws UsageError naming the violated constraint:
  // 2 <= n <= k, r > n, entry_bound >= 2.
  void validate() const;
};

// Dealer-side ground truth. Never published.
struct Instance {
  std::vector<Matrix> matrices;     // the public set M
  std::vector<std::size_t> sigma;   // sigma[j-1] = index held by P<j>
  Matrix secret;                    // A_sigma(n) ... A_sigma(1)

  std::size_t n() const { return sigma.size(); }
  // Shadows in ring order: result[j-1] is P<j>'s matrix.
  std::vector<Matrix> shadows() const;
};

struct Share {
  ParticipantId participant = 0;
  std::size_t matrix_index = 0;
  std::vector<ParticipantId> ring;
  BinaryVector u{0, 0};

  friend bool operator==(const Share&, const Share&) = default;
};

struct Bulletin {
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<Matrix> matrices;
  std::vector<Vector> u_prime;    // u_prime[i-1] is U'_i
  std::vector<Envelope> reveals;  // public protocol traffic, append-only

  const Matrix& matrix(std::size_t index) const;
};

struct CheckPairs {
  std::vector<BinaryVector> u;
  std::vector<Vector> u_prime;
};

struct Deal {
  Instance instance;
  Bulletin bulletin;
  std::vector<Share> shares;
};

// Product of all shadows walked once around the ring from `start` (1-based):
// shadows[start-2] ... shadows[0] shadows[n-1] ... shadows[start-1].
// rotated_product(shadows, 1) is the secret.
Matrix rotated_product(std::span<const Matrix> shadows, std::size_t start);

// Fully deterministic in params.seed. Instances in which any selected matrix
// is singular are discarded whole and redrawn; GenerationFailure after
// kMaxInvertibleAttempts redraws.
Deal generate_instance(const DealerParams& params);

// One check pair per start position i: U_i is a fresh check vector and
// U'_i = R_i U_i, R_i = rotated_product(shadows, i), which is what the
// verification chain starting at P<i> evaluates.
CheckPairs compute_check_pairs(const Instance& instance, Rng& rng);

// Rank of the augmented system X u = u' over the r*r unknown entries of X.
// At most r, so the pair never pins X down.
std::size_t secrecy_rank_check(const BinaryVector& u, const Vector& u_prime,
                               std::size_t r);

// Hands every share to its owner over secure channels.
void distribute_shares(std::span<const Share> shares, Network& network);

}  // namespace matshare
