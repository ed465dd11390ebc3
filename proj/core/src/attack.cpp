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

#include "matshare/attack.hpp"

#include <string>
#include <utility>

#include "matshare/protocol.hpp"

namespace matshare {
namespace {

Integer to_integer(std::size_t v) {
  return Integer(std::to_string(v));
}

class Enumerator {
 public:
  Enumerator(const SearchProblem& problem, SearchMode mode,
             std::optional<std::size_t> limit, SearchResult& out)
      : problem_(problem),
        mode_(mode),
        limit_(limit),
        out_(out),
        used_(problem.matrices.size(), false) {}

  void run() {
    std::vector<std::size_t> prefix;
    descend(prefix, nullptr);
  }

 private:
  bool full() const {
    return limit_ && out_.solutions.size() >= *limit_;
  }

  void descend(std::vector<std::size_t>& prefix, const Matrix* product) {
    const std::size_t k = problem_.matrices.size();
    for (std::size_t idx = 0; idx < k && !full(); ++idx) {
      if (mode_ == SearchMode::kOrderedDistinct && used_[idx]) continue;
      const Matrix& next_matrix = problem_.matrices[idx];
      Matrix next = product ? mat_mul(next_matrix, *product) : next_matrix;
      prefix.push_back(idx);
      if (prefix.size() == problem_.n) {
        ++out_.nodes_explored;
        if (next == problem_.target) out_.solutions.push_back(prefix);
      } else {
        used_[idx] = true;
        descend(prefix, &next);
        used_[idx] = false;
      }
      prefix.pop_back();
    }
  }

  const SearchProblem& problem_;
  SearchMode mode_;
  std::optional<std::size_t> limit_;
  SearchResult& out_;
  std::vector<bool> used_;
};

// w v^-1, through the integer adjugate when both are integral.
Matrix divide_right(const Matrix& w, const Matrix& v) {
  if (!w.is_integral() || !v.is_integral()) return mat_mul(w, mat_inverse(v));
  const ScaledInverse inv = scaled_inverse(v);
  Matrix out = mat_mul(w, inv.numerator);
  for (std::size_t i = 0; i < out.dim(); ++i) {
    for (std::size_t j = 0; j < out.dim(); ++j) {
      Scalar& cell = out(i, j);
      cell = Scalar(cell.get_num(), inv.denominator);
      cell.canonicalize();
    }
  }
  return out;
}

}  // namespace

Integer count_search_space(std::size_t k, std::size_t n, SpaceMode mode) {
  if (n < 1 || n > k) throw UsageError("count_search_space: need 1 <= n <= k");
  Integer count;
  switch (mode) {
    case SpaceMode::kMultiset:
      mpz_bin_uiui(count.get_mpz_t(), k + n - 1, n);
      break;
    case SpaceMode::kOrderedDistinct:
      count = 1;
      for (std::size_t i = 0; i < n; ++i) count *= to_integer(k - i);
      break;
    case SpaceMode::kOrderedWithRepetition:
      mpz_ui_pow_ui(count.get_mpz_t(), k, n);
      break;
  }
  return count;
}

SearchResult exhaustive_search(const SearchProblem& problem, SearchMode mode,
                               std::optional<std::size_t> limit,
                               bool override_guardrail) {
  const std::size_t k = problem.matrices.size();
  if (problem.n < 1 || problem.n > k) {
    throw UsageError("exhaustive_search: need 1 <= n <= k");
  }
  for (const Matrix& m : problem.matrices) {
    if (m.dim() != problem.target.dim()) {
      throw UsageError("exhaustive_search: dimension mismatch");
    }
  }
  const Integer space = count_search_space(
      k, problem.n,
      mode == SearchMode::kOrderedDistinct ? SpaceMode::kOrderedDistinct
                                           : SpaceMode::kOrderedWithRepetition);
  if (!override_guardrail && space > kSearchGuardrail) {
    throw GuardrailExceeded(space, "search space of " + space.get_str() +
                                       " sequences exceeds the guardrail");
  }

  SearchResult result;
  const auto begin = std::chrono::steady_clock::now();
  Enumerator(problem, mode, limit, result).run();
  result.elapsed = std::chrono::steady_clock::now() - begin;
  return result;
}

RatioReport ratio_analysis(std::span<const Envelope> eavesdropper_view,
                           const Bulletin& bulletin) {
  RatioReport report;
  for (const RevealRound& round : reveal_rounds(eavesdropper_view, bulletin.n)) {
    const auto& reveals = round.reveals;
    for (std::size_t j = 0; j + 1 < reveals.size(); ++j) {
      const auto* v = std::get_if<Matrix>(&reveals[j].payload);
      const auto* w = std::get_if<Matrix>(&reveals[j + 1].payload);
      const ParticipantId position = reveals[j + 1].from.id();
      std::optional<Matrix> ratio;
      if (v != nullptr && w != nullptr && v->dim() == w->dim()) {
        try {
          ratio = divide_right(*w, *v);
        } catch (const SingularMatrix&) {
        }
      }
      if (!ratio) {
        report.gaps.push_back(position);
        continue;
      }
      RatioFinding finding{position, std::move(*ratio), std::nullopt};
      for (std::size_t idx = 0; idx < bulletin.matrices.size(); ++idx) {
        if (bulletin.matrices[idx] == finding.shadow) {
          finding.matrix_index = idx;
          break;
        }
      }
      report.findings.push_back(std::move(finding));
    }
  }
  return report;
}

}  // namespace matshare
