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

// Exact square-matrix arithmetic over arbitrary-precision rationals.
//
// Every matrix the scheme handles is integer-valued; rationals only show up
// as intermediates of inversion. Scalars are GMP rationals, which GMP keeps
// canonical (positive denominator, reduced), so an integer Scalar always
// has denominator exactly 1.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "matshare/random.hpp"

namespace matshare {

using Integer = mpz_class;
using Scalar = mpq_class;

bool is_integer(const Scalar& s);

class Matrix {
 public:
  // Zero matrix of the given dimension. dim must be positive.
  explicit Matrix(std::size_t dim);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  Scalar& operator()(std::size_t row, std::size_t col) {
    return entries_[row * dim_ + col];
  }
  const Scalar& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  std::span<const Scalar> row(std::size_t i) const {
    return {entries_.data() + i * dim_, dim_};
  }
  std::span<const Scalar> entries() const { return entries_; }

  // True when every denominator is 1.
  bool is_integral() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t dim_;
  std::vector<Scalar> entries_;  // row-major
};

class Vector {
 public:
  explicit Vector(std::size_t dim);
  Vector(std::initializer_list<Scalar> entries);

  std::size_t dim() const { return entries_.size(); }
  Scalar& operator[](std::size_t i) { return entries_[i]; }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Scalar> entries() const { return entries_; }

  friend bool operator==(const Vector& a, const Vector& b);

 private:
  std::vector<Scalar> entries_;
};

class BinaryVector {
 public:
  // Throws UsageError if bits is empty or holds a value other than 0/1.
  explicit BinaryVector(std::vector<std::uint8_t> bits);
  BinaryVector(std::initializer_list<int> bits);

  std::size_t dim() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::size_t weight() const;
  std::span<const std::uint8_t> bits() const { return bits_; }

  Vector to_vector() const;

  friend bool operator==(const BinaryVector&, const BinaryVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);
std::ostream& operator<<(std::ostream& os, const Vector& v);
std::ostream& operator<<(std::ostream& os, const BinaryVector& v);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Vector mat_vec_mul(const Matrix& a, const Vector& v);
Vector mat_vec_mul(const Matrix& a, const BinaryVector& v);

// Inverse of an integer matrix kept as numerator / denominator, with
// numerator integral and denominator positive. The inverse is
// numerator * (1 / denominator).
struct ScaledInverse {
  Matrix numerator;
  Integer denominator;
};

// Fraction-free Gauss-Jordan on [a | I]. Every intermediate is an integer
// minor of the input, so no rational arithmetic happens until the caller
// divides. Throws UsageError for non-integral input, SingularMatrix when
// the determinant is zero.
ScaledInverse scaled_inverse(const Matrix& a);

Matrix mat_inverse(const Matrix& a);
Scalar determinant(const Matrix& a);
bool is_invertible(const Matrix& a);

// Rank of a rows x cols row-major rational matrix.
std::size_t rank(std::span<const Scalar> entries, std::size_t rows,
                 std::size_t cols);

// Freivalds' check that a * b == c using t random binary test vectors.
// Never rejects a true product; accepts a false one with probability at
// most 2^-t. Costs O(t * r^2) scalar operations.
bool freivalds_verify(const Matrix& a, const Matrix& b, const Matrix& c,
                      unsigned t, Seed seed);

// Entries independently uniform over {0, ..., entry_bound - 1}.
Matrix sample_matrix(std::size_t dim, std::uint64_t entry_bound, Rng& rng);

inline constexpr std::size_t kMaxInvertibleAttempts = 1000;

// Rejection-samples sample_matrix until the result is invertible. Throws
// GenerationFailure after kMaxInvertibleAttempts draws. When rejections is
// non-null it is incremented once per discarded singular draw.
Matrix sample_invertible_matrix(std::size_t dim, std::uint64_t entry_bound,
                                Rng& rng, std::size_t* rejections = nullptr);

// Uniform over binary vectors of dimension dim with Hamming weight >= 2.
BinaryVector sample_check_vector(std::size_t dim, Rng& rng);

}  // namespace matshare
