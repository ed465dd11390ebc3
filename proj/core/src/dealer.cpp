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

#include "matshare/dealer.hpp"

#include <numeric>
#include <string>

#include "matshare/error.hpp"

namespace matshare {

void DealerParams::validate() const {
  if (n < 2) throw UsageError("n >= 2 required (got n=" + std::to_string(n) + ")");
  if (n > k) {
    throw UsageError("n <= k required (got n=" + std::to_string(n) +
                     ", k=" + std::to_string(k) + ")");
  }
  if (r <= n) {
    throw UsageError("r > n required (got r=" + std::to_string(r) +
                     ", n=" + std::to_string(n) + ")");
  }
  if (entry_bound < 2) throw UsageError("entry bound >= 2 required");
}

std::vector<Matrix> Instance::shadows() const {
  std::vector<Matrix> out;
  out.reserve(sigma.size());
  for (std::size_t index : sigma) out.push_back(matrices.at(index));
  return out;
}

const Matrix& Bulletin::matrix(std::size_t index) const {
  if (index >= matrices.size()) {
    throw UsageError("matrix index " + std::to_string(index) +
                     " outside the public set");
  }
  return matrices[index];
}

Matrix rotated_product(std::span<const Matrix> shadows, std::size_t start) {
  const std::size_t n = shadows.size();
  if (n == 0 || start < 1 || start > n) {
    throw UsageError("rotated_product: start outside the ring");
  }
  Matrix acc = shadows[start - 1];
  for (std::size_t step = 1; step < n; ++step) {
    acc = mat_mul(shadows[(start - 1 + step) % n], acc);
  }
  return acc;
}

CheckPairs compute_check_pairs(const Instance& instance, Rng& rng) {
  const std::vector<Matrix> shadows = instance.shadows();
  const std::size_t n = shadows.size();
  const std::size_t r = instance.secret.dim();
  CheckPairs pairs;
  for (std::size_t start = 1; start <= n; ++start) {
    BinaryVector u = sample_check_vector(r, rng);
    // Walk the chain with matrix-vector products instead of forming R_i.
    Vector v = mat_vec_mul(shadows[start - 1], u);
    for (std::size_t step = 1; step < n; ++step) {
      v = mat_vec_mul(shadows[(start - 1 + step) % n], v);
    }
    pairs.u.push_back(std::move(u));
    pairs.u_prime.push_back(std::move(v));
  }
  return pairs;
}

Deal generate_instance(const DealerParams& params) {
  params.validate();
  Rng rng(params.seed);

  for (std::size_t attempt = 0; attempt < kMaxInvertibleAttempts; ++attempt) {
    std::vector<Matrix> matrices;
    matrices.reserve(params.k);
    for (std::size_t i = 0; i < params.k; ++i) {
      matrices.push_back(sample_matrix(params.r, params.entry_bound, rng));
    }

    // Partial Fisher-Yates: uniform over ordered n-sequences of distinct
    // indices.
    std::vector<std::size_t> pool(params.k);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<std::size_t> sigma(params.n);
    for (std::size_t j = 0; j < params.n; ++j) {
      const std::size_t pick = j + rng.uniform(params.k - j);
      std::swap(pool[j], pool[pick]);
      sigma[j] = pool[j];
    }

    bool usable = true;
    for (std::size_t index : sigma) {
      if (!is_invertible(matrices[index])) {
        usable = false;
        break;
      }
    }
    if (!usable) continue;

    Instance instance{std::move(matrices), std::move(sigma),
                      Matrix(params.r)};
    instance.secret = rotated_product(instance.shadows(), 1);

    CheckPairs pairs = compute_check_pairs(instance, rng);

    std::vector<ParticipantId> ring(params.n);
    std::iota(ring.begin(), ring.end(), ParticipantId{1});

    std::vector<Share> shares;
    shares.reserve(params.n);
    for (std::size_t j = 0; j < params.n; ++j) {
      shares.push_back(
          Share{j + 1, instance.sigma[j], ring, std::move(pairs.u[j])});
    }

    Bulletin bulletin{params.r,
                      params.k,
                      params.n,
                      instance.matrices,
                      std::move(pairs.u_prime),
                      {}};
    return Deal{std::move(instance), std::move(bulletin), std::move(shares)};
  }
  throw GenerationFailure("no instance with invertible shadows after " +
                          std::to_string(kMaxInvertibleAttempts) +
                          " attempts");
}

std::size_t secrecy_rank_check(const BinaryVector& u, const Vector& u_prime,
                               std::size_t r) {
  if (u.dim() != r || u_prime.dim() != r) {
    throw UsageError("secrecy_rank_check: dimension mismatch");
  }
  // Augmented system: row p reads sum_q X[p][q] u[q] = u'[p], unknown
  // X[p][q] sits in column p*r+q and u'[p] in the last column.
  const std::size_t unknowns = r * r;
  const std::size_t cols = unknowns + 1;
  std::vector<Scalar> system(r * cols);
  for (std::size_t p = 0; p < r; ++p) {
    for (std::size_t q = 0; q < r; ++q) {
      system[p * cols + p * r + q] = u[q] ? 1 : 0;
    }
    system[p * cols + unknowns] = u_prime[p];
  }
  return rank(system, r, cols);
}

void distribute_shares(std::span<const Share> shares, Network& network) {
  for (const Share& share : shares) {
    const Address owner = Address::participant(share.participant);
    network.send(Address::dealer(), owner, Visibility::kSecure,
                 MessageKind::kShareIndex, IndexPointer{share.matrix_index});
    network.send(Address::dealer(), owner, Visibility::kSecure,
                 MessageKind::kCheckVector, share.u);
  }
}

}  // namespace matshare
