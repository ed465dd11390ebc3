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

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "matshare/error.hpp"
#include "oracle.hpp"

namespace matshare {
namespace {

Matrix random_matrix(std::size_t r, std::uint64_t bound, std::uint64_t seed) {
  Rng rng(Seed{seed});
  return sample_matrix(r, bound, rng);
}

TEST(MatMulTest, IdentityIsNeutral) {
  const Matrix a{{5, 7}, {11, 13}};
  EXPECT_EQ(mat_mul(Matrix::identity(2), a), a);
  EXPECT_EQ(mat_mul(a, Matrix::identity(2)), a);
}

TEST(MatMulTest, SmallProduct) {
  const Matrix a{{1, 1}, {0, 1}};
  const Matrix b{{1, 0}, {1, 1}};
  const Matrix expected{{2, 1}, {1, 1}};
  ASSERT_EQ(oracle::naive_mul(a, b), expected);
  EXPECT_EQ(mat_mul(a, b), expected);
}

TEST(MatMulTest, AgreesWithNaiveOnRationals) {
  Matrix a = random_matrix(4, 50, 1);
  Matrix b = random_matrix(4, 50, 2);
  a(1, 2) = mpq_class(3, 7);
  b(0, 3) = mpq_class(-5, 2);
  EXPECT_EQ(mat_mul(a, b), oracle::naive_mul(a, b));
}

TEST(MatMulTest, Associativity) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(Seed{seed});
    const Matrix a = sample_matrix(5, 256, rng);
    const Matrix b = sample_matrix(5, 256, rng);
    const Matrix c = sample_matrix(5, 256, rng);
    EXPECT_EQ(mat_mul(mat_mul(a, b), c), mat_mul(a, mat_mul(b, c)))
        << "seed " << seed;
  }
}

TEST(MatMulTest, IntegerInputsGiveIntegerOutputs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix p = mat_mul(random_matrix(6, 1000, seed),
                             random_matrix(6, 1000, seed + 100));
    EXPECT_TRUE(p.is_integral());
    for (const Scalar& s : p.entries()) EXPECT_EQ(s.get_den(), 1);
  }
}

TEST(MatMulTest, NoOverflowOnLargeEntries) {
  Matrix a(2);
  a(0, 0) = mpz_class("123456789012345678901234567890");
  a(1, 1) = 1;
  const Matrix sq = mat_mul(a, a);
  EXPECT_EQ(sq(0, 0), mpq_class(mpz_class(
                          "15241578753238836750495351562536198787501905199875"
                          "019052100")));
}

TEST(MatMulTest, DimensionMismatchIsUsageError) {
  EXPECT_THROW(mat_mul(Matrix::identity(2), Matrix::identity(3)), UsageError);
}

TEST(MatVecMulTest, Examples) {
  EXPECT_EQ(mat_vec_mul(Matrix::identity(3), BinaryVector{1, 0, 1}),
            (Vector{1, 0, 1}));
  const Matrix a{{1, 1}, {0, 1}};
  ASSERT_EQ(oracle::naive_mul(a, Vector{1, 1}), (Vector{2, 1}));
  EXPECT_EQ(mat_vec_mul(a, Vector{1, 1}), (Vector{2, 1}));
  EXPECT_EQ(mat_vec_mul(a, BinaryVector{1, 1}), (Vector{2, 1}));
  EXPECT_EQ(mat_vec_mul(Matrix{{2, 0}, {0, 2}}, Vector{0, 0}),
            (Vector{0, 0}));
}

TEST(MatVecMulTest, BinaryAndScalarPathsAgree) {
  Rng rng(Seed{9});
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = sample_matrix(7, 1000, rng);
    const BinaryVector u = sample_check_vector(7, rng);
    EXPECT_EQ(mat_vec_mul(a, u), oracle::naive_mul(a, u.to_vector()));
  }
}

TEST(MatVecMulTest, DimensionMismatchIsUsageError) {
  EXPECT_THROW(mat_vec_mul(Matrix::identity(2), Vector{1, 2, 3}), UsageError);
  EXPECT_THROW(mat_vec_mul(Matrix::identity(3), BinaryVector{1, 1}),
               UsageError);
}

TEST(InverseTest, Examples) {
  EXPECT_EQ(mat_inverse(Matrix::identity(4)), Matrix::identity(4));
  const Matrix a{{1, 1}, {0, 1}};
  const Matrix inv = mat_inverse(a);
  EXPECT_EQ(inv, (Matrix{{1, -1}, {0, 1}}));
  EXPECT_EQ(mat_mul(a, inv), Matrix::identity(2));
  EXPECT_THROW(mat_inverse(Matrix{{1, 1}, {1, 1}}), SingularMatrix);
}

TEST(InverseTest, MatchesGaussJordanOracle) {
  // Small entry ranges give zero pivots, exercising row swaps.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t r = 1 + seed % 7;
    const std::uint64_t bound = seed % 3 == 0 ? 2 : (seed % 3 == 1 ? 4 : 1000);
    const Matrix a = random_matrix(r, bound, seed);
    const auto expected = oracle::gauss_jordan_inverse(a);
    if (!expected) {
      EXPECT_THROW(mat_inverse(a), SingularMatrix) << "seed " << seed;
      EXPECT_FALSE(is_invertible(a));
      continue;
    }
    const Matrix inv = mat_inverse(a);
    EXPECT_EQ(inv, *expected) << "seed " << seed;
    EXPECT_EQ(mat_mul(a, inv), Matrix::identity(r));
    EXPECT_EQ(mat_mul(inv, a), Matrix::identity(r));
  }
}

TEST(InverseTest, RationalInputRoundTrips) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Matrix a = random_matrix(5, 100, seed);
    if (!is_invertible(a)) continue;
    const Matrix inv = mat_inverse(a);
    EXPECT_EQ(mat_inverse(inv), a) << "seed " << seed;
  }
}

TEST(InverseTest, ScaledInverseIsExact) {
  const Matrix a = random_matrix(8, 256, 77);
  const ScaledInverse si = scaled_inverse(a);
  EXPECT_GT(si.denominator, 0);
  EXPECT_TRUE(si.numerator.is_integral());
  // a * numerator == denominator * I
  const Matrix prod = mat_mul(a, si.numerator);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      EXPECT_EQ(prod(i, j), i == j ? mpq_class(si.denominator) : mpq_class(0));
    }
  }
  EXPECT_EQ(mpq_class(si.denominator), abs(determinant(a)));
}

TEST(InverseTest, ScaledInverseRejectsRationals) {
  Matrix a = Matrix::identity(2);
  a(0, 1) = mpq_class(1, 2);
  EXPECT_THROW(scaled_inverse(a), UsageError);
}

TEST(DeterminantTest, Examples) {
  EXPECT_TRUE(is_invertible(Matrix::identity(2)));
  EXPECT_FALSE(is_invertible(Matrix{{1, 1}, {1, 1}}));
  const Matrix unipotent{{1, 1}, {0, 1}};
  ASSERT_EQ(oracle::cofactor_determinant(unipotent), 1);
  EXPECT_EQ(determinant(unipotent), 1);
  EXPECT_TRUE(is_invertible(unipotent));
}

TEST(DeterminantTest, MatchesCofactorExpansion) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t r = 1 + seed % 6;
    Matrix a = random_matrix(r, seed % 2 ? 3 : 500, seed);
    if (seed % 5 == 0) a(0, r - 1) += mpq_class(1, 3);
    EXPECT_EQ(determinant(a), oracle::cofactor_determinant(a))
        << "seed " << seed;
  }
}

TEST(RankTest, MatchesRrefOracle) {
  Rng rng(Seed{5});
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng.uniform(6);
    const std::size_t cols = 1 + rng.uniform(8);
    std::vector<Scalar> flat(rows * cols);
    std::vector<std::vector<mpq_class>> nested(rows, std::vector<mpq_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        // Mostly zeros so ranks vary.
        const std::uint64_t roll = rng.uniform(4);
        Scalar v = roll == 0 ? Scalar(static_cast<long>(rng.uniform(7)) - 3) : Scalar(0);
        if (roll == 0 && rng.uniform(5) == 0) v /= 2;
        flat[i * cols + j] = v;
        nested[i][j] = v;
      }
    }
    EXPECT_EQ(rank(flat, rows, cols), oracle::rref_rank(nested)) << trial;
  }
}

TEST(FreivaldsTest, AcceptsTrueProducts) {
  EXPECT_TRUE(freivalds_verify(Matrix::identity(5), Matrix::identity(5),
                               Matrix::identity(5), 1, Seed{0}));
  EXPECT_TRUE(freivalds_verify(Matrix{{1, 1}, {0, 1}}, Matrix{{1, 0}, {1, 1}},
                               Matrix{{2, 1}, {1, 1}}, 10, Seed{3}));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(Seed{seed});
    const Matrix a = sample_matrix(6, 256, rng);
    const Matrix b = sample_matrix(6, 256, rng);
    EXPECT_TRUE(freivalds_verify(a, b, mat_mul(a, b), 3, rng.derive()));
  }
}

TEST(FreivaldsTest, SingleEntryCorruptionAcceptedAboutHalfTheTime) {
  const Matrix a{{1, 1}, {0, 1}};
  const Matrix b{{1, 0}, {1, 1}};
  Matrix forged = mat_mul(a, b);
  forged(0, 0) += 1;
  constexpr int kTrials = 10000;
  int accepted = 0;
  for (int s = 0; s < kTrials; ++s) {
    accepted += freivalds_verify(a, b, forged, 1, Seed{std::uint64_t(s)});
  }
  const double rate = double(accepted) / kTrials;
  const double sigma = std::sqrt(0.5 * 0.5 / kTrials);
  EXPECT_LE(rate, 0.5 + 3 * sigma);
  EXPECT_GT(rate, 0.5 - 3 * sigma);
}

TEST(FreivaldsTest, RejectsInputsOfWrongShape) {
  EXPECT_THROW(freivalds_verify(Matrix::identity(2), Matrix::identity(2),
                                Matrix::identity(3), 1, Seed{}),
               UsageError);
  EXPECT_THROW(freivalds_verify(Matrix::identity(2), Matrix::identity(2),
                                Matrix::identity(2), 0, Seed{}),
               UsageError);
}

TEST(SampleMatrixTest, RangeAndDeterminism) {
  Rng rng(Seed{11});
  const Matrix m = sample_matrix(2, 2, rng);
  for (const Scalar& s : m.entries()) EXPECT_TRUE(s == 0 || s == 1);
  EXPECT_EQ(random_matrix(6, 256, 99), random_matrix(6, 256, 99));
  EXPECT_FALSE(random_matrix(6, 256, 99) == random_matrix(6, 256, 100));
  EXPECT_THROW(sample_matrix(0, 4, rng), UsageError);
  EXPECT_THROW(sample_matrix(3, 1, rng), UsageError);
}

// Per-cell means of 1000 draws of 20x20 matrices, bound 256. A per-cell
// 3-sigma window is missed by chance about 0.27% of the time, so across 400
// cells we allow a handful of excursions and also check the grand mean.
TEST(SampleMatrixTest, EntriesLookUniform) {
  constexpr std::size_t kR = 20;
  constexpr int kSamples = 1000;
  Rng rng(Seed{2024});
  std::vector<double> sums(kR * kR, 0.0);
  for (int s = 0; s < kSamples; ++s) {
    const Matrix m = sample_matrix(kR, 256, rng);
    for (std::size_t c = 0; c < kR * kR; ++c) {
      sums[c] += m.entries()[c].get_d();
    }
  }
  const double sd = std::sqrt((256.0 * 256.0 - 1) / 12.0);
  const double cell_sigma = sd / std::sqrt(double(kSamples));
  int outside = 0;
  double grand = 0;
  for (double sum : sums) {
    const double mean = sum / kSamples;
    grand += mean;
    if (std::abs(mean - 127.5) > 3 * cell_sigma) ++outside;
  }
  grand /= double(kR * kR);
  EXPECT_LE(outside, 5);
  EXPECT_LT(std::abs(grand - 127.5), 3 * cell_sigma / kR);
}

TEST(SampleInvertibleTest, OneByOne) {
  Rng rng(Seed{1});
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(sample_invertible_matrix(1, 2, rng), Matrix{{1}});
  }
}

TEST(SampleInvertibleTest, RejectionsAreRare) {
  std::size_t rejections = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(Seed{seed});
    const Matrix m = sample_invertible_matrix(5, 256, rng, &rejections);
    EXPECT_NE(oracle::cofactor_determinant(m), 0);
  }
  EXPECT_LE(rejections, 5u);
}

TEST(SampleInvertibleTest, TinySpaceRejectsMostDraws) {
  // 6 of the 16 matrices in {0,1}^(2x2) are invertible, so 200 successes
  // cost about 333 rejections.
  Rng rng(Seed{0});
  std::size_t rejections = 0;
  for (int i = 0; i < 200; ++i) {
    EXPECT_TRUE(is_invertible(sample_invertible_matrix(2, 2, rng, &rejections)));
  }
  EXPECT_GT(rejections, 200u);
  EXPECT_LT(rejections, 500u);
}

TEST(CheckVectorTest, DimensionThreeSupport) {
  const auto all = oracle::enumerate_check_vectors(3, 2);
  ASSERT_EQ(all.size(), 4u);  // 2^3 - 3 - 1
  std::set<std::string> support;
  for (std::uint32_t mask : all) {
    std::string s;
    for (int i = 0; i < 3; ++i) s += ((mask >> i) & 1) ? '1' : '0';
    support.insert(s);
  }
  std::map<std::string, int> seen;
  Rng rng(Seed{17});
  constexpr int kDraws = 8000;
  for (int i = 0; i < kDraws; ++i) {
    std::ostringstream os;
    os << sample_check_vector(3, rng);
    ASSERT_TRUE(support.count(os.str())) << os.str();
    ++seen[os.str()];
  }
  EXPECT_EQ(seen.size(), 4u);
  // Uniform: chi-square with 3 degrees of freedom, 0.999 quantile 16.27.
  double chi2 = 0;
  for (const auto& [v, count] : seen) {
    const double expected = kDraws / 4.0;
    chi2 += (count - expected) * (count - expected) / expected;
  }
  EXPECT_LT(chi2, 16.27);
}

TEST(CheckVectorTest, WeightAtLeastTwo) {
  Rng rng(Seed{3});
  for (std::size_t r = 2; r <= 20; ++r) {
    for (int i = 0; i < 50; ++i) EXPECT_GE(sample_check_vector(r, rng).weight(), 2u);
  }
  EXPECT_THROW(sample_check_vector(1, rng), UsageError);
}

TEST(CheckVectorTest, DimensionTwentySpaceSize) {
  // Excluding the zero vector and the 20 unit vectors.
  EXPECT_EQ(oracle::enumerate_check_vectors(20, 2).size(),
            (std::size_t{1} << 20) - 21);
}

TEST(BinaryVectorTest, RejectsNonBits) {
  EXPECT_THROW(BinaryVector({0, 2}), UsageError);
  EXPECT_THROW(BinaryVector(std::vector<std::uint8_t>{}), UsageError);
  EXPECT_EQ(BinaryVector({1, 0, 1, 1}).weight(), 3u);
}

TEST(RngTest, UniformStaysInRangeAndIsDeterministic) {
  Rng a(Seed{42});
  Rng b(Seed{42});
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.uniform(7);
    EXPECT_LT(x, 7u);
    EXPECT_EQ(x, b.uniform(7));
  }
  EXPECT_THROW(a.uniform(0), UsageError);
}

}  // namespace
}  // namespace matshare
