// Copyright 2026 The wrlattice Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wrl/construction.hpp"
#include "wrl/oracle.hpp"
#include "wrl/svp.hpp"

namespace wrl {
namespace {

using testing::brute_force_minimum;

std::vector<CoordinateVector> as_vectors(const std::vector<std::vector<std::int64_t>>& v) {
  std::vector<CoordinateVector> out;
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

TEST(FormValueTest, Examples) {
  EXPECT_EQ(form_value(gram_for_family(Family::F2R, 6, 6), CoordinateVector{1, -1}), 24);
  EXPECT_EQ(form_value(gram_for_family(Family::F2C, 3, 3), CoordinateVector{1, 1}), 9);
  EXPECT_EQ(form_value(gram_for_family(Family::F3R, 2, 1), CoordinateVector{0, 0, 0}), 0);
  EXPECT_THROW(form_value(gram_for_family(Family::F3R, 2, 1), CoordinateVector{1, 0}), Error);
  // Half-integer diagonal goes through the exact path.
  SquareMatrix<Rational> m(2);
  m(0, 0) = Rational(3, 2);
  m(1, 1) = 1;
  EXPECT_EQ(form_value(ExactGram(m), CoordinateVector{1, 0}), Rational(3, 2));
}

TEST(ShortestVectorsTest, RealQuadraticHexagonal) {
  const ExactGram g = gram_for_family(Family::F2R, 6, 6);
  const MinResult m = shortest_vectors(g);
  const auto brute = brute_force_minimum(g.entries(), 4);
  EXPECT_EQ(m.lambdaMin, 24);
  EXPECT_EQ(brute.lambda, 24);
  EXPECT_EQ(m.minimalVectors, as_vectors(brute.vectors));
  EXPECT_EQ(m.minimalVectors,
            (std::vector<CoordinateVector>{{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}}));
  EXPECT_EQ(m.kissingNumber, 6u);
  EXPECT_TRUE(m.wellRounded);
  EXPECT_EQ(center_density_sq(g, m).value, Rational(1, 12));
  EXPECT_NEAR(center_density_sq(g, m).numericApprox, 0.288675, 5e-7);
}

TEST(ShortestVectorsTest, SymmetricQuarticBoundary) {
  const ExactGram g = build(IntPolynomial::quartic(6, 6, -6, -7)).gram;
  const MinResult m = shortest_vectors(g);
  const auto brute = brute_force_minimum(g.entries(), 4);
  EXPECT_EQ(m.lambdaMin, 24);
  EXPECT_EQ(m.kissingNumber, 12u);
  EXPECT_EQ(m.minimalVectors, as_vectors(brute.vectors));
  EXPECT_TRUE(m.wellRounded);
}

TEST(ShortestVectorsTest, CubicEnlargedKissing) {
  const ExactGram g = gram_for_family(Family::F3R, 1, -1);
  const MinResult m = shortest_vectors(g);
  EXPECT_EQ(m.lambdaMin, 3);
  EXPECT_EQ(m.minimalVectors, (std::vector<CoordinateVector>{{-1, -1, -1}, {-1, 0, 0}, {0, -1, 0},
                                                             {0, 0, -1}, {0, 0, 1}, {0, 1, 0},
                                                             {1, 0, 0}, {1, 1, 1}}));
  EXPECT_EQ(m.kissingNumber, 8u);
  EXPECT_TRUE(m.wellRounded);
  const CenterDensitySq d = center_density_sq(g, m);
  EXPECT_EQ(d.value, Rational(27, 1024));
  EXPECT_NEAR(d.numericApprox, 3 * std::sqrt(3.0) / 32, 1e-15);
}

TEST(ShortestVectorsTest, FccCubic) {
  const ExactGram g = build(IntPolynomial::cubic(4, 4, 1)).gram;
  const MinResult m = shortest_vectors(g);
  EXPECT_TRUE(is_well_rounded(g));
  EXPECT_EQ(m.kissingNumber, 12u);
  EXPECT_EQ(center_density_sq(g, m).value, Rational(1, 32));
  EXPECT_NEAR(center_density_sq(g, m).numericApprox, 1 / (4 * std::sqrt(2.0)), 1e-15);
}

TEST(IsWellRoundedTest, RankDeficientMinimum) {
  // x² + x − 3: a² = 1 < −2b = 6, only ±(1,1) attain λ = 2a² = 2.
  ASSERT_EQ(classify(IntPolynomial::quadratic(1, -3)).kind, RootKind::TwoDistinctReal);
  const ExactGram g = gram_for_family(Family::F2R, 1, -3);
  const MinResult m = shortest_vectors(g);
  EXPECT_EQ(m.lambdaMin, 2);
  EXPECT_EQ(m.minimalVectors, (std::vector<CoordinateVector>{{-1, -1}, {1, 1}}));
  EXPECT_EQ(m.spanRank, 1u);
  EXPECT_FALSE(m.wellRounded);
  EXPECT_FALSE(is_well_rounded(g));
  EXPECT_TRUE(is_well_rounded(gram_for_family(Family::F2R, 6, 6)));
}

TEST(ShortestVectorsTest, Errors) {
  SquareMatrix<Rational> indefinite(2);
  indefinite(0, 0) = 1;
  indefinite(1, 1) = 1;
  indefinite(0, 1) = indefinite(1, 0) = 2;
  try {
    shortest_vectors(ExactGram(indefinite));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
  SquareMatrix<Rational> five(5);
  for (std::size_t i = 0; i < 5; ++i) five(i, i) = 1;
  try {
    shortest_vectors(ExactGram(five));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDimension);
  }
}

TEST(LdltTest, Reconstructs) {
  const ExactGram g = gram_for_family(Family::F2C, 3, 5);
  const LdlDecomposition ldl = ldlt(g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Rational acc = 0;
      for (std::size_t k = 0; k < 2; ++k) acc += ldl.lower(i, k) * ldl.diag[k] * ldl.lower(j, k);
      EXPECT_EQ(acc, g(i, j));
    }
}

TEST(EnumerateWithinTest, MatchesBruteForce) {
  const ExactGram g = gram_for_family(Family::F3R, 3, 1);
  const auto points = enumerate_within(g, 40);
  std::size_t expected = 0;
  for (std::int64_t x = -6; x <= 6; ++x)
    for (std::int64_t y = -6; y <= 6; ++y)
      for (std::int64_t z = -6; z <= 6; ++z) {
        const Rational q = lemma_norm(Family::F3R, 3, 1, std::vector<std::int64_t>{x, y, z});
        if ((x || y || z) && q <= 40) ++expected;
      }
  EXPECT_EQ(points.size(), expected);
  for (const auto& [v, q] : points) EXPECT_EQ(form_value(g, v), q);
}

// Random positive-definite Grams, including ones far from reduced, against
// the brute-force cube.
TEST(ShortestVectorsTest, RandomGramsMatchBruteForceProperty) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> entry(-3, 3), dim(2, 4);
  int checked = 0;
  while (checked < 300) {
    const std::size_t n = dim(rng);
    // G = B Bᵗ with a random integer basis B.
    SquareMatrix<Rational> basis(n), gram(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) basis(i, j) = entry(rng);
    if (determinant(basis) == 0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) gram(i, j) += basis(i, k) * basis(j, k);
    const ExactGram g(gram);
    const auto box = oracle::box_bounds(g, g.min_diagonal());
    std::int64_t radius = 0;
    for (auto b : box) radius = std::max(radius, b);
    if (radius > 6) continue;
    const MinResult m = shortest_vectors(g);
    const auto brute = brute_force_minimum(gram, radius + 1);
    ASSERT_EQ(m.lambdaMin, brute.lambda);
    ASSERT_EQ(m.minimalVectors, as_vectors(brute.vectors));
    ++checked;
  }
}

// Negation closure, even kissing number, λ <= min diagonal, WR ⟺ full rank.
TEST(ShortestVectorsTest, StructuralInvariantsProperty) {
  for (Family f : kAllFamilies)
    for (std::int64_t a = -9; a <= 9; ++a)
      for (std::int64_t b = -9; b <= 9; ++b) {
        if (a == 0) continue;
        const ExactGram g = gram_for_family(f, a, b);
        if (!g.positive_definite()) continue;
        const MinResult m = shortest_vectors(g);
        EXPECT_LE(m.lambdaMin, g.min_diagonal());
        EXPECT_EQ(m.kissingNumber % 2, 0u);
        for (const auto& v : m.minimalVectors) {
          EXPECT_TRUE(std::binary_search(m.minimalVectors.begin(), m.minimalVectors.end(), -v));
          EXPECT_EQ(form_value(g, v), m.lambdaMin);
        }
        EXPECT_EQ(m.wellRounded, m.spanRank == g.dimension());
        EXPECT_TRUE(std::is_sorted(m.minimalVectors.begin(), m.minimalVectors.end()));
      }
}

// Scaling G by k² scales λ by k² and leaves S, WR and δ² unchanged.
TEST(ShortestVectorsTest, ScalingCovarianceProperty) {
  for (Family f : kAllFamilies)
    for (std::int64_t a = 1; a <= 7; ++a)
      for (std::int64_t b = -7; b <= 7; ++b) {
        const ExactGram g = gram_for_family(f, a, b);
        if (!g.positive_definite()) continue;
        for (long k : {2L, 3L}) {
          SquareMatrix<Rational> scaled(g.dimension());
          for (std::size_t i = 0; i < g.dimension(); ++i)
            for (std::size_t j = 0; j < g.dimension(); ++j) scaled(i, j) = g(i, j) * k * k;
          const ExactGram gs(scaled);
          const MinResult m = shortest_vectors(g), ms = shortest_vectors(gs);
          EXPECT_EQ(ms.lambdaMin, m.lambdaMin * k * k);
          EXPECT_EQ(ms.minimalVectors, m.minimalVectors);
          EXPECT_EQ(ms.wellRounded, m.wellRounded);
          EXPECT_EQ(center_density_sq(gs, ms).value, center_density_sq(g, m).value);
        }
      }
}

TEST(BoxOracleTest, AgreesWithEngineOnSkewedLattice) {
  // a² − 4b = 1 makes the F2R lattice very skewed.
  const ExactGram g = gram_for_family(Family::F2R, 11, 30);
  const auto box = oracle::box_shortest_vectors(g, 2);
  const MinResult m = shortest_vectors(g);
  EXPECT_EQ(box.lambdaMin, m.lambdaMin);
  EXPECT_EQ(box.minimalVectors, m.minimalVectors);
}

}  // namespace
}  // namespace wrl
