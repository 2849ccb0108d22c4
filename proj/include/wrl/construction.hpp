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
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wrl/common.hpp"
#include "wrl/polynomial.hpp"

namespace wrl {

/// The four polynomial-to-lattice constructions.
///   F2R  quadratic with distinct real roots, rows (α,β),(β,α)
///   F2C  quadratic with roots α±iβ, rows (α,β),(α,-β)
///   F3R  cubic with distinct real roots, circulant rows
///   F4S  quartic with roots ±γ, β, ψ, cyclic rows
enum class Family { F2R, F2C, F3R, F4S };

inline constexpr std::array<Family, 4> kAllFamilies = {Family::F2R, Family::F2C,
                                                       Family::F3R, Family::F4S};

inline constexpr std::size_t dimension(Family f) {
  switch (f) {
    case Family::F2R:
    case Family::F2C: return 2;
    case Family::F3R: return 3;
    case Family::F4S: return 4;
  }
  return 0;
}

inline const char* to_string(Family f) {
  switch (f) {
    case Family::F2R: return "F2R";
    case Family::F2C: return "F2C";
    case Family::F3R: return "F3R";
    case Family::F4S: return "F4S";
  }
  return "?";
}

/// Lower-case tag used on the command line and in reports.
inline const char* tag(Family f) {
  switch (f) {
    case Family::F2R: return "f2r";
    case Family::F2C: return "f2c";
    case Family::F3R: return "f3r";
    case Family::F4S: return "f4s";
  }
  return "?";
}

inline std::optional<Family> family_from_tag(std::string_view s) {
  for (Family f : kAllFamilies) {
    if (s == tag(f) || s == to_string(f)) return f;
  }
  return std::nullopt;
}

/// The family whose root-structure hypothesis a classification satisfies.
inline std::optional<Family> family_for(RootKind kind) {
  switch (kind) {
    case RootKind::TwoDistinctReal: return Family::F2R;
    case RootKind::ComplexConjugatePair: return Family::F2C;
    case RootKind::ThreeDistinctReal: return Family::F3R;
    case RootKind::FourDistinctRealSymmetric: return Family::F4S;
    case RootKind::Other: return std::nullopt;
  }
  return std::nullopt;
}

/// Symmetric rational Gram matrix whose entries have denominators dividing 2.
/// Positive definiteness is recorded rather than enforced, so that
/// coefficient identities can be checked on arbitrary (a, b).
class ExactGram {
 public:
  explicit ExactGram(SquareMatrix<Rational> entries) : entries_(std::move(entries)) {
    const std::size_t n = entries_.size();
    if (n == 0) throw Error(ErrorKind::InvalidInput, "empty Gram matrix");
    bool small = true;
    std::vector<std::int64_t> twice(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational& v = entries_(i, j);
        v.canonicalize();
        if (v != entries_(j, i)) {
          throw Error(ErrorKind::InvalidInput, "Gram matrix is not symmetric");
        }
        if (v.get_den() != 1 && v.get_den() != 2) {
          throw Error(ErrorKind::InvalidInput, "Gram entry " + v.get_str() +
                                                   " has a denominator other than 1 or 2");
        }
        const Integer t = v.get_num() * (2 / v.get_den());
        if (small && abs(t) < (Integer(1) << 62)) {
          twice[i * n + j] = to_int64(t);
        } else {
          small = false;
        }
      }
    }
    if (small) twice_ = std::move(twice);
    det_ = determinant(entries_);
    positiveDefinite_ = true;
    for (std::size_t k = 1; k <= n && positiveDefinite_; ++k) {
      SquareMatrix<Rational> minor(k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = entries_(i, j);
      positiveDefinite_ = determinant(minor) > 0;
    }
  }

  std::size_t dimension() const noexcept { return entries_.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const SquareMatrix<Rational>& entries() const noexcept { return entries_; }
  const Rational& det() const noexcept { return det_; }
  bool positive_definite() const noexcept { return positiveDefinite_; }

  /// 2G as 64-bit integers when every entry fits comfortably.
  const std::optional<std::vector<std::int64_t>>& twice_entries() const noexcept {
    return twice_;
  }

  Rational min_diagonal() const {
    Rational m = entries_(0, 0);
    for (std::size_t i = 1; i < dimension(); ++i) m = std::min(m, entries_(i, i));
    return m;
  }

  friend bool operator==(const ExactGram& x, const ExactGram& y) {
    return x.entries_ == y.entries_;
  }

 private:
  SquareMatrix<Rational> entries_;
  Rational det_;
  bool positiveDefinite_ = false;
  std::optional<std::vector<std::int64_t>> twice_;
};

/// Gram matrix of the family's basis expressed through a and b only.
inline ExactGram gram_for_family(Family family, std::int64_t a_, std::int64_t b_) {
  const Rational a = to_rational(a_), b = to_rational(b_);
  const std::size_t n = dimension(family);
  SquareMatrix<Rational> g(n);
  const Rational diag = a * a - 2 * b;
  switch (family) {
    case Family::F2R:
      g(0, 0) = g(1, 1) = diag;
      g(0, 1) = g(1, 0) = 2 * b;
      break;
    case Family::F2C:
      g(0, 0) = g(1, 1) = b;
      g(0, 1) = g(1, 0) = diag / 2;
      break;
    case Family::F3R:
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) g(i, j) = (i == j) ? diag : b;
      break;
    case Family::F4S:
      for (std::size_t i = 0; i < 4; ++i) g(i, i) = diag;
      g(0, 2) = g(2, 0) = g(1, 3) = g(3, 1) = 2 * b;
      break;
  }
  return ExactGram(std::move(g));
}

/// det(G) = det(M)^2 as a polynomial in the coefficients.
inline Rational det_closed_form(Family family, std::int64_t a_, std::int64_t b_) {
  const Rational a = to_rational(a_), b = to_rational(b_);
  const Rational a2 = a * a;
  switch (family) {
    case Family::F2R: return a2 * (a2 - 4 * b);
    case Family::F2C: return Rational(a2 * (4 * b - a2) / 4);
    case Family::F3R: return a2 * (a2 - 3 * b) * (a2 - 3 * b);
    case Family::F4S: return a2 * a2 * (a2 - 4 * b) * (a2 - 4 * b);
  }
  return 0;
}

namespace detail {

inline bool small_coordinates(std::span<const std::int64_t> x) {
  return std::all_of(x.begin(), x.end(),
                     [](std::int64_t v) { return v > -(1 << 20) && v < (1 << 20); });
}

}  // namespace detail

/// Squared norm of x1 v1 + ... + xn vn written directly in the coefficients,
/// in the form each construction's norm lemma states it:
///   F2R  a²(x1²+x2²) − 2b(x1−x2)²
///   F2C  a²/4 (x1+x2)² + (4b−a²)/4 (x1−x2)²
///   F3R  (a²−2b)Σxi² + 2b(x1x2+x1x3+x2x3)
///   F4S  (a²−2b)Σxi² + 4b(x1x3+x2x4)
inline Rational lemma_norm(Family family, std::int64_t a, std::int64_t b,
                           std::span<const std::int64_t> x) {
  if (x.size() != dimension(family)) {
    throw Error(ErrorKind::InvalidInput, "coordinate vector has the wrong dimension");
  }
  const auto eval = [&](auto A, auto B, auto X) {
    using T = decltype(A);
    const T a2 = A * A;
    T sq = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sq += X(i) * X(i);
    switch (family) {
      case Family::F2R: {
        const T diff = X(0) - X(1);
        return std::pair<T, T>(a2 * sq - 2 * B * diff * diff, 1);
      }
      case Family::F2C: {
        const T sum = X(0) + X(1), diff = X(0) - X(1);
        return std::pair<T, T>(a2 * sum * sum + (4 * B - a2) * diff * diff, 4);
      }
      case Family::F3R: {
        const T cross = X(0) * X(1) + X(0) * X(2) + X(1) * X(2);
        return std::pair<T, T>((a2 - 2 * B) * sq + 2 * B * cross, 1);
      }
      case Family::F4S: {
        const T cross = X(0) * X(2) + X(1) * X(3);
        return std::pair<T, T>((a2 - 2 * B) * sq + 4 * B * cross, 1);
      }
    }
    return std::pair<T, T>(0, 1);
  };
  const bool small = a > -(1LL << 31) && a < (1LL << 31) && b > -(1LL << 31) &&
                     b < (1LL << 31) && detail::small_coordinates(x);
  if (small) {
    const auto [num, den] = eval(static_cast<__int128>(a), static_cast<__int128>(b),
                                 [&](std::size_t i) { return static_cast<__int128>(x[i]); });
    if (num % den == 0) {
      const __int128 v = num / den;
      if (v >= INT64_MIN && v <= INT64_MAX) return to_rational(static_cast<std::int64_t>(v));
    }
  }
  const auto [num, den] =
      eval(to_integer(a), to_integer(b), [&](std::size_t i) { return to_integer(x[i]); });
  Rational out(num, den);
  out.canonicalize();
  return out;
}

/// A polynomial together with its lattice: exact Gram (authoritative for all
/// norms) and the floating generator matrix built from numeric roots.
struct LatticeInstance {
  IntPolynomial poly;
  Family family;
  RootClassification roots;
  ExactGram gram;
  SquareMatrix<double> genMatrix;
  Rational detClosedForm;

  std::size_t dimension() const noexcept { return wrl::dimension(family); }
};

namespace detail {

inline SquareMatrix<double> rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  SquareMatrix<double> m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline SquareMatrix<double> generator_rows(Family family, const IntPolynomial& p,
                                           const RootClassification& rc) {
  const auto& r = rc.roots;
  switch (family) {
    case Family::F2R: {
      const double alpha = r[0].real(), beta = r[1].real();
      return rows_to_matrix({{alpha, beta}, {beta, alpha}});
    }
    case Family::F2C: {
      const double alpha = r[0].real(), beta = std::abs(r[0].imag());
      return rows_to_matrix({{alpha, beta}, {alpha, -beta}});
    }
    case Family::F3R: {
      const double alpha = r[0].real(), beta = r[1].real(), gamma = r[2].real();
      return rows_to_matrix({{alpha, beta, gamma}, {gamma, alpha, beta}, {beta, gamma, alpha}});
    }
    case Family::F4S: {
      // β, ψ are the roots of x² + a x + q with q = b + γ².
      const long double gamma = std::sqrt(static_cast<long double>(rc.gammaSq->get_d()));
      const long double alpha = -gamma;
      const long double s = static_cast<long double>(p.a());
      const long double q = static_cast<long double>(Rational(to_rational(p.b()) + *rc.gammaSq).get_d());
      const long double root = std::sqrt(s * s - 4 * q);
      const long double t = -(s + (s >= 0 ? root : -root)) / 2;
      long double beta = t, psi = q / t;
      if (beta > psi) std::swap(beta, psi);
      const double A = static_cast<double>(alpha), B = static_cast<double>(beta);
      const double C = static_cast<double>(gamma), D = static_cast<double>(psi);
      return rows_to_matrix({{A, B, C, D}, {B, C, D, A}, {C, D, A, B}, {D, A, B, C}});
    }
  }
  return {};
}

}  // namespace detail

/// M Mᵗ in floating point.
inline SquareMatrix<double> floating_gram(const SquareMatrix<double>& m) {
  const std::size_t n = m.size();
  SquareMatrix<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long double acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += static_cast<long double>(m(i, k)) * m(j, k);
      g(i, j) = static_cast<double>(acc);
    }
  return g;
}

/// Largest entrywise |G − M Mᵗ|.
inline double gram_residual(const LatticeInstance& inst) {
  const SquareMatrix<double> mm = floating_gram(inst.genMatrix);
  double worst = 0;
  for (std::size_t i = 0; i < mm.size(); ++i)
    for (std::size_t j = 0; j < mm.size(); ++j)
      worst = std::max(worst, std::abs(inst.gram(i, j).get_d() - mm(i, j)));
  return worst;
}

/// Tolerance for gram_residual: 1e-8 while entries stay below 1e4, growing
/// linearly beyond.
inline double gram_tolerance(const ExactGram& g) {
  double largest = 0;
  for (std::size_t i = 0; i < g.dimension(); ++i)
    for (std::size_t j = 0; j < g.dimension(); ++j)
      largest = std::max(largest, std::abs(g(i, j).get_d()));
  return 1e-8 * std::max(1.0, largest / 1e4);
}

inline LatticeInstance build(const IntPolynomial& p) {
  if (p.a() == 0) throw Error(ErrorKind::InvalidFamily, "a must be nonzero");
  RootClassification rc = classify(p);
  const std::optional<Family> family = family_for(rc.kind);
  if (!family || dimension(*family) != static_cast<std::size_t>(p.degree())) {
    throw Error(ErrorKind::UnsupportedStructure,
                p.to_string() + " does not match any construction family");
  }
  ExactGram gram = gram_for_family(*family, p.a(), p.b());
  Rational closed = det_closed_form(*family, p.a(), p.b());
  if (!gram.positive_definite()) {
    throw Error(ErrorKind::Internal, "Gram matrix of " + p.to_string() + " is not positive definite");
  }
  if (gram.det() != closed) {
    throw Error(ErrorKind::Internal, "closed-form determinant disagrees for " + p.to_string());
  }
  SquareMatrix<double> gen = detail::generator_rows(*family, p, rc);
  return LatticeInstance{p, *family, std::move(rc), std::move(gram), std::move(gen),
                         std::move(closed)};
}

}  // namespace wrl
