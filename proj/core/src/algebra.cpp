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

#include "matshare/algebra.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>

#include "matshare/error.hpp"

namespace matshare {
namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw UsageError(std::string(op) + ": dimension mismatch (" +
                     std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// Row-major integer working storage used by the elimination routines.
class IntGrid {
 public:
  IntGrid(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols) {}

  mpz_class& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  mpz_srcptr get(std::size_t i, std::size_t j) const {
    return cells_[i * cols_ + j].get_mpz_t();
  }
  mpz_ptr ptr(std::size_t i, std::size_t j) {
    return cells_[i * cols_ + j].get_mpz_t();
  }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(cells_.begin() + a * cols_,
                     cells_.begin() + (a + 1) * cols_,
                     cells_.begin() + b * cols_);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpz_class> cells_;
};

mpz_class lcm_of_denominators(std::span<const Scalar> entries) {
  mpz_class l = 1;
  for (const Scalar& s : entries) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.get_den_mpz_t());
  }
  return l;
}

// Integer matrix equal to scale * m, where scale clears every denominator.
IntGrid integral_grid(const Matrix& m, const mpz_class& scale) {
  const std::size_t r = m.dim();
  IntGrid g(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const Scalar& s = m(i, j);
      mpz_divexact(g.ptr(i, j), scale.get_mpz_t(), s.get_den_mpz_t());
      mpz_mul(g.ptr(i, j), g.ptr(i, j), s.get_num_mpz_t());
    }
  }
  return g;
}

// Bareiss elimination; returns the determinant of the integer grid.
mpz_class bareiss_determinant(IntGrid g) {
  const std::size_t r = g.rows();
  mpz_class prev = 1;
  bool negate = false;
  mpz_class tmp;
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t p = k;
    while (p < r && mpz_sgn(g.get(p, k)) == 0) ++p;
    if (p == r) return 0;
    if (p != k) {
      g.swap_rows(p, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < r; ++i) {
      for (std::size_t j = k + 1; j < r; ++j) {
        mpz_mul(tmp.get_mpz_t(), g.get(k, k), g.get(i, j));
        mpz_submul(tmp.get_mpz_t(), g.get(i, k), g.get(k, j));
        mpz_divexact(g.ptr(i, j), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      g.at(i, k) = 0;
    }
    prev = g.at(k, k);
  }
  return negate ? mpz_class(-prev) : prev;
}

Integer to_integer(std::uint64_t v) {
  if constexpr (sizeof(unsigned long) >= sizeof(std::uint64_t)) {
    return Integer(static_cast<unsigned long>(v));
  } else {
    return Integer(std::to_string(v));
  }
}

}  // namespace

bool is_integer(const Scalar& s) {
  return mpz_cmp_ui(s.get_den_mpz_t(), 1) == 0;
}

// --- Matrix / Vector / BinaryVector --------------------------------------

Matrix::Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw UsageError("Matrix: dimension must be positive");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : Matrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw UsageError("Matrix: rows must be square");
    std::size_t j = 0;
    for (const Scalar& s : row) (*this)(i, j++) = s;
    ++i;
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

bool Matrix::is_integral() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Scalar& s) { return is_integer(s); });
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.dim_ == b.dim_ && std::equal(a.entries_.begin(), a.entries_.end(),
                                        b.entries_.begin());
}

Vector::Vector(std::size_t dim) : entries_(dim) {
  if (dim == 0) throw UsageError("Vector: dimension must be positive");
}

Vector::Vector(std::initializer_list<Scalar> entries) : entries_(entries) {
  if (entries_.empty()) throw UsageError("Vector: dimension must be positive");
}

bool operator==(const Vector& a, const Vector& b) {
  return a.entries_.size() == b.entries_.size() &&
         std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin());
}

BinaryVector::BinaryVector(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  if (bits_.empty()) {
    throw UsageError("BinaryVector: dimension must be positive");
  }
  for (std::uint8_t b : bits_) {
    if (b > 1) throw UsageError("BinaryVector: entries must be 0 or 1");
  }
}

BinaryVector::BinaryVector(std::initializer_list<int> bits)
    : BinaryVector([&] {
        std::vector<std::uint8_t> v;
        v.reserve(bits.size());
        for (int b : bits) {
          if (b != 0 && b != 1) {
            throw UsageError("BinaryVector: entries must be 0 or 1");
          }
          v.push_back(static_cast<std::uint8_t>(b));
        }
        return v;
      }()) {}

std::size_t BinaryVector::weight() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

Vector BinaryVector::to_vector() const {
  Vector v(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) v[i] = bits_[i];
  return v;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j) {
      os << (j ? ", " : "") << m(i, j).get_str();
    }
    os << ']';
  }
  return os << ']';
}

std::ostream& operator<<(std::ostream& os, const Vector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) {
    os << (i ? ", " : "") << v[i].get_str();
  }
  return os << ')';
}

std::ostream& operator<<(std::ostream& os, const BinaryVector& v) {
  for (std::size_t i = 0; i < v.dim(); ++i) os << (v[i] ? '1' : '0');
  return os;
}

// --- products --------------------------------------------------------------

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require_same_dim(a.dim(), b.dim(), "mat_mul");
  const std::size_t r = a.dim();
  Matrix out(r);
  if (a.is_integral() && b.is_integral()) {
    // Integer fast path: accumulate numerators directly.
    mpz_class acc;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        acc = 0;
        for (std::size_t l = 0; l < r; ++l) {
          mpz_addmul(acc.get_mpz_t(), a(i, l).get_num_mpz_t(),
                     b(l, j).get_num_mpz_t());
        }
        out(i, j) = acc;
      }
    }
    return out;
  }
  Scalar acc;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      acc = 0;
      for (std::size_t l = 0; l < r; ++l) acc += a(i, l) * b(l, j);
      out(i, j) = acc;
    }
  }
  return out;
}

Vector mat_vec_mul(const Matrix& a, const Vector& v) {
  require_same_dim(a.dim(), v.dim(), "mat_vec_mul");
  const std::size_t r = a.dim();
  Vector out(r);
  for (std::size_t i = 0; i < r; ++i) {
    Scalar acc = 0;
    for (std::size_t j = 0; j < r; ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Vector mat_vec_mul(const Matrix& a, const BinaryVector& v) {
  require_same_dim(a.dim(), v.dim(), "mat_vec_mul");
  const std::size_t r = a.dim();
  Vector out(r);
  for (std::size_t i = 0; i < r; ++i) {
    Scalar acc = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (v[j]) acc += a(i, j);
    }
    out[i] = acc;
  }
  return out;
}

// --- inversion and determinants ---------------------------------------------

ScaledInverse scaled_inverse(const Matrix& a) {
  if (!a.is_integral()) {
    throw UsageError("scaled_inverse: matrix must be integral");
  }
  const std::size_t r = a.dim();
  const std::size_t cols = 2 * r;
  IntGrid g(r, cols);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) g.at(i, j) = a(i, j).get_num();
    g.at(i, r + i) = 1;
  }

  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t p = k;
    while (p < r && mpz_sgn(g.get(p, k)) == 0) ++p;
    if (p == r) throw SingularMatrix("matrix is singular");
    g.swap_rows(p, k);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == k) continue;
      // Columns left of k are already reduced: zero except the diagonal,
      // which becomes the new pivot below.
      for (std::size_t j = k + 1; j < cols; ++j) {
        mpz_mul(tmp.get_mpz_t(), g.get(k, k), g.get(i, j));
        mpz_submul(tmp.get_mpz_t(), g.get(i, k), g.get(k, j));
        mpz_divexact(g.ptr(i, j), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      g.at(i, k) = 0;
      if (i < k) g.at(i, i) = g.at(k, k);
    }
    prev = g.at(k, k);
  }

  // Left block is now prev * I and the right block prev * a^-1.
  const bool flip = sgn(prev) < 0;
  ScaledInverse out{Matrix(r), flip ? mpz_class(-prev) : prev};
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      mpz_class& cell = g.at(i, r + j);
      if (flip) mpz_neg(cell.get_mpz_t(), cell.get_mpz_t());
      out.numerator(i, j) = cell;
    }
  }
  return out;
}

Matrix mat_inverse(const Matrix& a) {
  const mpz_class scale = lcm_of_denominators(a.entries());
  Matrix integral(a.dim());
  if (scale == 1) {
    integral = a;
  } else {
    const IntGrid g = integral_grid(a, scale);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = 0; j < a.dim(); ++j) {
        integral(i, j) = mpz_class(g.get(i, j));
      }
    }
  }
  // a = integral / scale, so a^-1 = scale * integral^-1.
  const ScaledInverse inv = scaled_inverse(integral);
  Matrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Scalar& cell = out(i, j);
      mpz_mul(cell.get_num_mpz_t(), inv.numerator(i, j).get_num_mpz_t(),
              scale.get_mpz_t());
      mpz_set(cell.get_den_mpz_t(), inv.denominator.get_mpz_t());
      cell.canonicalize();
    }
  }
  return out;
}

Scalar determinant(const Matrix& a) {
  // Scale row by row so the denominator bookkeeping stays per-row.
  const std::size_t r = a.dim();
  IntGrid g(r, r);
  mpz_class total_scale = 1;
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class row_scale = lcm_of_denominators(a.row(i));
    for (std::size_t j = 0; j < r; ++j) {
      const Scalar& s = a(i, j);
      mpz_divexact(g.ptr(i, j), row_scale.get_mpz_t(), s.get_den_mpz_t());
      mpz_mul(g.ptr(i, j), g.ptr(i, j), s.get_num_mpz_t());
    }
    total_scale *= row_scale;
  }
  Scalar det(bareiss_determinant(std::move(g)), total_scale);
  det.canonicalize();
  return det;
}

bool is_invertible(const Matrix& a) { return sgn(determinant(a)) != 0; }

std::size_t rank(std::span<const Scalar> entries, std::size_t rows,
                 std::size_t cols) {
  if (entries.size() != rows * cols) {
    throw UsageError("rank: entry count does not match shape");
  }
  IntGrid g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = entries.subspan(i * cols, cols);
    const mpz_class row_scale = lcm_of_denominators(row);
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_divexact(g.ptr(i, j), row_scale.get_mpz_t(),
                   row[j].get_den_mpz_t());
      mpz_mul(g.ptr(i, j), g.ptr(i, j), row[j].get_num_mpz_t());
    }
  }

  // Cross-multiplying elimination; each reduced row is divided by its
  // content to keep entries small.
  std::size_t pivot_row = 0;
  mpz_class tmp;
  mpz_class content;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t p = pivot_row;
    while (p < rows && mpz_sgn(g.get(p, col)) == 0) ++p;
    if (p == rows) continue;
    g.swap_rows(p, pivot_row);
    for (std::size_t i = pivot_row + 1; i < rows; ++i) {
      if (mpz_sgn(g.get(i, col)) == 0) continue;
      content = 0;
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_mul(tmp.get_mpz_t(), g.get(pivot_row, col), g.get(i, j));
        mpz_submul(tmp.get_mpz_t(), g.get(i, col), g.get(pivot_row, j));
        g.at(i, j) = tmp;
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), tmp.get_mpz_t());
      }
      g.at(i, col) = 0;
      if (content > 1) {
        for (std::size_t j = col + 1; j < cols; ++j) {
          mpz_divexact(g.ptr(i, j), g.get(i, j), content.get_mpz_t());
        }
      }
    }
    ++pivot_row;
  }
  return pivot_row;
}

// --- verification ---------------------------------------------------------

bool freivalds_verify(const Matrix& a, const Matrix& b, const Matrix& c,
                      unsigned t, Seed seed) {
  require_same_dim(a.dim(), b.dim(), "freivalds_verify");
  require_same_dim(a.dim(), c.dim(), "freivalds_verify");
  if (t == 0) throw UsageError("freivalds_verify: t must be at least 1");
  Rng rng(seed);
  const std::size_t r = a.dim();
  std::vector<std::uint8_t> bits(r);
  if (a.is_integral() && b.is_integral() && c.is_integral()) {
    std::vector<Integer> bx(r), abx(r), cx(r);
    for (unsigned iter = 0; iter < t; ++iter) {
      for (auto& bit : bits) bit = rng.bit() ? 1 : 0;
      for (std::size_t i = 0; i < r; ++i) {
        bx[i] = 0;
        cx[i] = 0;
        for (std::size_t j = 0; j < r; ++j) {
          if (!bits[j]) continue;
          bx[i] += b(i, j).get_num();
          cx[i] += c(i, j).get_num();
        }
      }
      for (std::size_t i = 0; i < r; ++i) {
        abx[i] = 0;
        for (std::size_t j = 0; j < r; ++j) {
          mpz_addmul(abx[i].get_mpz_t(), a(i, j).get_num_mpz_t(), bx[j].get_mpz_t());
        }
        if (abx[i] != cx[i]) return false;
      }
    }
    return true;
  }
  for (unsigned iter = 0; iter < t; ++iter) {
    for (auto& bit : bits) bit = rng.bit() ? 1 : 0;
    const BinaryVector probe(bits);
    if (!(mat_vec_mul(a, mat_vec_mul(b, probe)) == mat_vec_mul(c, probe))) {
      return false;
    }
  }
  return true;
}

// --- sampling ------------------------------------------------------------

Matrix sample_matrix(std::size_t dim, std::uint64_t entry_bound, Rng& rng) {
  if (dim == 0) throw UsageError("sample_matrix: dimension must be positive");
  if (entry_bound < 2) {
    throw UsageError("sample_matrix: entry bound must be at least 2");
  }
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      m(i, j) = to_integer(rng.uniform(entry_bound));
    }
  }
  return m;
}

Matrix sample_invertible_matrix(std::size_t dim, std::uint64_t entry_bound,
                                Rng& rng, std::size_t* rejections) {
  for (std::size_t attempt = 0; attempt < kMaxInvertibleAttempts; ++attempt) {
    Matrix m = sample_matrix(dim, entry_bound, rng);
    if (is_invertible(m)) return m;
    if (rejections != nullptr) ++*rejections;
  }
  throw GenerationFailure("no invertible matrix after " +
                          std::to_string(kMaxInvertibleAttempts) +
                          " attempts");
}

BinaryVector sample_check_vector(std::size_t dim, Rng& rng) {
  if (dim < 2) {
    throw UsageError("sample_check_vector: dimension must be at least 2");
  }
  std::vector<std::uint8_t> bits(dim);
  for (;;) {
    std::size_t weight = 0;
    for (auto& bit : bits) {
      bit = rng.bit() ? 1 : 0;
      weight += bit;
    }
    if (weight >= 2) return BinaryVector(bits);
  }
}

}  // namespace matshare
