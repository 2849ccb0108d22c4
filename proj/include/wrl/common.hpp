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

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wrl {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ErrorKind {
  DegreeMismatch,
  InvalidFamily,
  UnsupportedStructure,
  InvalidParameter,
  InvalidInput,
  UnsupportedDimension,
  NotApplicable,
  InvalidSpec,
  Internal,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeMismatch: return "degree-mismatch";
    case ErrorKind::InvalidFamily: return "invalid-family";
    case ErrorKind::UnsupportedStructure: return "unsupported-structure";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::UnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::NotApplicable: return "not-applicable";
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

static_assert(sizeof(long) == sizeof(std::int64_t),
              "GMP conversions assume a 64-bit long");

inline Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

inline Rational to_rational(std::int64_t v) { return Rational(to_integer(v)); }

inline bool fits_int64(const Integer& z) { return z.fits_slong_p(); }

inline std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) {
    throw Error(ErrorKind::Internal, "integer " + z.get_str() + " exceeds 64 bits");
  }
  return z.get_si();
}

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// floor(sqrt(q)) for q >= 0, exact.
inline Integer floor_sqrt(const Rational& q) {
  if (q < 0) throw Error(ErrorKind::Internal, "floor_sqrt of a negative value");
  Integer r = sqrt(floor_of(q));
  while (Rational((r + 1) * (r + 1)) <= q) ++r;
  while (r > 0 && Rational(r * r) > q) --r;
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Dense row-major square matrix; small enough for the dimensions used here.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, const T& fill = T(0))
      : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) {
    return x.n_ == y.n_ && x.data_ == y.data_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Exact determinant by Gaussian elimination over the rationals.
inline Rational determinant(const SquareMatrix<Rational>& m) {
  const std::size_t n = m.size();
  SquareMatrix<Rational> a = m;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Rank over the rationals of the given rows.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      Rational f = rows[i][col] / rows[rank][col];
      for (std::size_t j = col; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace wrl
