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

#pragma once

// Naive exhaustive search used to cross-check the enumeration engine. It
// shares no code with svp.hpp: the box comes from the adjugate of G and the
// form is evaluated on 2G directly.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "wrl/common.hpp"
#include "wrl/construction.hpp"
#include "wrl/svp.hpp"

namespace wrl::oracle {

/// Half-widths B_i with |x_i| <= B_i for every x with xᵀGx <= bound, from
/// x_i² <= (xᵀGx)(G⁻¹)_ii.
inline std::vector<std::int64_t> box_bounds(const ExactGram& g, const Rational& bound) {
  const std::size_t n = g.dimension();
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    // (G⁻¹)_ii = det(G with row and column i removed) / det(G).
    Rational cofactor = 1;
    if (n > 1) {
      SquareMatrix<Rational> minor(n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = g(r, c);
        }
        ++rr;
      }
      cofactor = determinant(minor);
    }
    out[i] = to_int64(floor_sqrt(bound * cofactor / g.det()));
  }
  return out;
}

struct BoxResult {
  Rational lambdaMin;
  std::vector<CoordinateVector> minimalVectors;
  std::uint64_t pointsVisited = 0;
};

/// Minimum and minimal vectors by visiting every point of the box
/// |x_i| <= B_i + margin, bound = smallest diagonal entry.
inline BoxResult box_shortest_vectors(const ExactGram& g, std::int64_t margin) {
  const std::size_t n = g.dimension();
  if (!g.positive_definite()) throw Error(ErrorKind::InvalidInput, "Gram matrix is not positive definite");
  const Rational bound = g.min_diagonal();
  std::vector<std::int64_t> half = box_bounds(g, bound);
  for (auto& h : half) h += margin;

  // Integer matrix 2G; entries stay tiny for every family instance we sweep,
  // but fall back to GMP when they do not.
  std::vector<Integer> twice(n * n);
  bool narrow = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational t = g(i, j) * 2;
      twice[i * n + j] = t.get_num();
      narrow = narrow && abs(t.get_num()) < (Integer(1) << 40);
    }
  narrow = narrow && std::all_of(half.begin(), half.end(), [](std::int64_t h) { return h < (1 << 20); });

  BoxResult out;
  bool found = false;
  Integer bestTwice;
  std::vector<std::int64_t> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -half[i];
  while (true) {
    ++out.pointsVisited;
    if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v != 0; })) {
      Integer value;
      if (narrow) {
        __int128 acc = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            acc += static_cast<__int128>(twice[i * n + j].get_si()) * x[i] * x[j];
        value = to_integer(static_cast<std::int64_t>(acc));
      } else {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) value += twice[i * n + j] * to_integer(x[i]) * to_integer(x[j]);
      }
      if (!found || value < bestTwice) {
        found = true;
        bestTwice = value;
        out.minimalVectors.clear();
      }
      if (value == bestTwice) out.minimalVectors.emplace_back(x);
    }
    // Odometer step; stops after the last corner.
    std::size_t k = n;
    while (k > 0 && x[k - 1] == half[k - 1]) {
      x[k - 1] = -half[k - 1];
      --k;
    }
    if (k == 0) break;
    ++x[k - 1];
  }
  out.lambdaMin = Rational(bestTwice, 2);
  out.lambdaMin.canonicalize();
  std::sort(out.minimalVectors.begin(), out.minimalVectors.end());
  return out;
}

}  // namespace wrl::oracle
