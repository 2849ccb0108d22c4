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

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "wrl/common.hpp"
#include "wrl/construction.hpp"

namespace wrl {

inline constexpr std::size_t kMaxDimension = 4;

/// Integer coefficients of a lattice point in the basis v1..vn.
struct CoordinateVector {
  std::vector<std::int64_t> coords;

  CoordinateVector() = default;
  explicit CoordinateVector(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  CoordinateVector(std::initializer_list<std::int64_t> c) : coords(c) {}

  std::size_t size() const noexcept { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }
  operator std::span<const std::int64_t>() const noexcept { return coords; }

  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](std::int64_t v) { return v == 0; });
  }

  CoordinateVector operator-() const {
    CoordinateVector out = *this;
    for (auto& v : out.coords) v = -v;
    return out;
  }

  friend auto operator<=>(const CoordinateVector&, const CoordinateVector&) = default;
};

struct MinResult {
  Rational lambdaMin;
  std::vector<CoordinateVector> minimalVectors;
  std::size_t kissingNumber = 0;
  std::size_t spanRank = 0;
  bool wellRounded = false;
};

struct CenterDensitySq {
  Rational value;
  double numericApprox = 0;
};

/// xᵀ G x, exact.
inline Rational form_value(const ExactGram& g, std::span<const std::int64_t> x) {
  const std::size_t n = g.dimension();
  if (x.size() != n) throw Error(ErrorKind::InvalidInput, "dimension mismatch in form_value");
  if (const auto& twice = g.twice_entries(); twice && detail::small_coordinates(x)) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      __int128 row = 0;
      for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>((*twice)[i * n + j]) * x[j];
      acc += row * x[i];
    }
    if (acc >= INT64_MIN && acc <= INT64_MAX) {
      Rational out(to_integer(static_cast<std::int64_t>(acc)), 2);
      out.canonicalize();
      return out;
    }
  }
  Rational acc = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) acc += g(i, j) * to_integer(x[i]) * to_integer(x[j]);
  return acc;
}

/// G = L D Lᵀ over the rationals, L unit lower triangular.
struct LdlDecomposition {
  std::vector<Rational> diag;
  SquareMatrix<Rational> lower;
};

inline LdlDecomposition ldlt(const ExactGram& g) {
  const std::size_t n = g.dimension();
  LdlDecomposition out{std::vector<Rational>(n), SquareMatrix<Rational>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Rational d = g(i, i);
    for (std::size_t k = 0; k < i; ++k) d -= out.lower(i, k) * out.lower(i, k) * out.diag[k];
    if (d <= 0) throw Error(ErrorKind::InvalidInput, "Gram matrix is not positive definite");
    out.diag[i] = d;
    out.lower(i, i) = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational v = g(j, i);
      for (std::size_t k = 0; k < i; ++k) v -= out.lower(j, k) * out.lower(i, k) * out.diag[k];
      out.lower(j, i) = v / d;
    }
  }
  return out;
}

namespace detail {

// Depth-first Fincke–Pohst enumeration of every x with Q(x) <= bound, where
// Q(x) = Σ_i D_i (x_i + Σ_{j>i} L_ji x_j)^2.
class Enumerator {
 public:
  Enumerator(const LdlDecomposition& ldl, Rational bound)
      : ldl_(ldl), bound_(std::move(bound)), n_(ldl.diag.size()), x_(n_, 0) {}

  template <typename Visit>
  void run(Visit&& visit) {
    descend(n_ - 1, Rational(0), visit);
  }

 private:
  template <typename Visit>
  void descend(std::size_t level, const Rational& partial, Visit& visit) {
    Rational center = 0;
    for (std::size_t j = level + 1; j < n_; ++j) center -= ldl_.lower(j, level) * to_integer(x_[j]);
    const Rational remaining = bound_ - partial;
    const Rational& d = ldl_.diag[level];
    const auto cost = [&](std::int64_t v) {
      Rational y = to_rational(v) - center;
      return Rational(d * y * y);
    };
    const auto inside = [&](std::int64_t v) { return cost(v) <= remaining; };

    const std::int64_t nearest = to_int64(floor_of(center + Rational(1, 2)));
    if (!inside(nearest)) return;
    const double radius = std::sqrt(std::max(0.0, Rational(remaining / d).get_d()));
    const double c = center.get_d();
    std::int64_t lo = std::min(nearest, static_cast<std::int64_t>(std::floor(c - radius)));
    std::int64_t hi = std::max(nearest, static_cast<std::int64_t>(std::ceil(c + radius)));
    while (lo < nearest && !inside(lo)) ++lo;
    while (inside(lo - 1)) --lo;
    while (hi > nearest && !inside(hi)) --hi;
    while (inside(hi + 1)) ++hi;

    for (std::int64_t v = lo; v <= hi; ++v) {
      x_[level] = v;
      const Rational next = partial + cost(v);
      if (level == 0) {
        visit(x_, next);
      } else {
        descend(level - 1, next, visit);
      }
    }
    x_[level] = 0;
  }

  const LdlDecomposition& ldl_;
  Rational bound_;
  std::size_t n_;
  std::vector<std::int64_t> x_;
};

inline void require_supported(const ExactGram& g) {
  if (g.dimension() > kMaxDimension) {
    throw Error(ErrorKind::UnsupportedDimension,
                "dimension " + std::to_string(g.dimension()) + " exceeds 4");
  }
  if (!g.positive_definite()) {
    throw Error(ErrorKind::InvalidInput, "Gram matrix is not positive definite");
  }
}

}  // namespace detail

/// Every nonzero x with xᵀGx <= bound, in lexicographic order, with its value.
inline std::vector<std::pair<CoordinateVector, Rational>> enumerate_within(const ExactGram& g,
                                                                           const Rational& bound) {
  detail::require_supported(g);
  std::vector<std::pair<CoordinateVector, Rational>> out;
  detail::Enumerator(ldlt(g), bound).run([&](const std::vector<std::int64_t>& x, const Rational& q) {
    if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v != 0; })) {
      out.emplace_back(CoordinateVector(x), q);
    }
  });
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

inline std::size_t coordinate_rank(const std::vector<CoordinateVector>& vectors) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& v : vectors) {
    std::vector<Rational> row;
    for (std::int64_t c : v.coords) row.push_back(to_rational(c));
    rows.push_back(std::move(row));
  }
  return rational_rank(std::move(rows));
}

/// Exact minimum, complete minimal-vector set, kissing number and span rank.
inline MinResult shortest_vectors(const ExactGram& g) {
  detail::require_supported(g);
  // ±e_i are lattice points, so the smallest diagonal entry bounds the minimum.
  const Rational bound = g.min_diagonal();
  MinResult out;
  out.lambdaMin = bound;
  detail::Enumerator(ldlt(g), bound).run([&](const std::vector<std::int64_t>& x, const Rational& q) {
    if (std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; })) return;
    if (q < out.lambdaMin) {
      out.lambdaMin = q;
      out.minimalVectors.clear();
    }
    if (q == out.lambdaMin) out.minimalVectors.emplace_back(x);
  });
  std::sort(out.minimalVectors.begin(), out.minimalVectors.end());
  out.kissingNumber = out.minimalVectors.size();
  out.spanRank = coordinate_rank(out.minimalVectors);
  out.wellRounded = out.spanRank == g.dimension();
  return out;
}

inline bool is_well_rounded(const ExactGram& g) { return shortest_vectors(g).wellRounded; }

/// δ² = (λ/4)^n / det(G).
inline CenterDensitySq center_density_sq(const ExactGram& g, const MinResult& m) {
  Rational base = m.lambdaMin / 4;
  Rational value = 1;
  for (std::size_t i = 0; i < g.dimension(); ++i) value *= base;
  value /= g.det();
  value.canonicalize();
  return {value, std::sqrt(value.get_d())};
}

}  // namespace wrl
