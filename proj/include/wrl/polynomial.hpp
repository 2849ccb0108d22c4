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
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wrl/common.hpp"

namespace wrl {

/// Largest accepted coefficient magnitude.
inline constexpr std::int64_t kMaxCoefficient = 1'000'000;

/// Monic integer polynomial x^n + a x^(n-1) + b x^(n-2) [+ c x^(n-3) [+ d]]
/// of degree 2, 3 or 4.
class IntPolynomial {
 public:
  static IntPolynomial quadratic(std::int64_t a, std::int64_t b) {
    return IntPolynomial({a, b});
  }
  static IntPolynomial cubic(std::int64_t a, std::int64_t b, std::int64_t c) {
    return IntPolynomial({a, b, c});
  }
  static IntPolynomial quartic(std::int64_t a, std::int64_t b, std::int64_t c,
                               std::int64_t d) {
    return IntPolynomial({a, b, c, d});
  }

  /// Builds from the non-leading coefficients; the count fixes the degree.
  static IntPolynomial from_tail(std::span<const std::int64_t> tail) {
    return IntPolynomial(std::vector<std::int64_t>(tail.begin(), tail.end()));
  }

  /// Parses "a,b[,c[,d]]".
  static IntPolynomial parse(std::string_view text) {
    std::vector<std::int64_t> tail;
    std::string field;
    std::string source(text);
    std::istringstream in(source);
    while (std::getline(in, field, ',')) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(field, &used);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "cannot parse coefficient '" + field + "'");
      }
      while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) {
        ++used;
      }
      if (used != field.size()) {
        throw Error(ErrorKind::InvalidInput, "cannot parse coefficient '" + field + "'");
      }
      tail.push_back(v);
    }
    if (!source.empty() && source.back() == ',') {
      throw Error(ErrorKind::InvalidInput, "trailing comma in coefficient list");
    }
    return IntPolynomial(std::move(tail));
  }

  int degree() const noexcept { return static_cast<int>(tail_.size()); }

  std::int64_t a() const { return tail_[0]; }
  std::int64_t b() const { return tail_[1]; }
  std::optional<std::int64_t> c() const {
    return degree() >= 3 ? std::optional(tail_[2]) : std::nullopt;
  }
  std::optional<std::int64_t> d() const {
    return degree() == 4 ? std::optional(tail_[3]) : std::nullopt;
  }

  std::span<const std::int64_t> tail() const noexcept { return tail_; }

  std::int64_t constant_term() const noexcept { return tail_.back(); }

  /// Coefficients from the constant term up to the leading 1.
  std::vector<Rational> ascending_coefficients() const {
    std::vector<Rational> out;
    for (auto it = tail_.rbegin(); it != tail_.rend(); ++it) out.push_back(to_rational(*it));
    out.emplace_back(1);
    return out;
  }

  template <typename T>
  T evaluate(const T& x) const {
    T acc(1);
    for (std::int64_t coeff : tail_) acc = acc * x + T(static_cast<double>(coeff));
    return acc;
  }

  std::string to_string() const {
    std::ostringstream out;
    out << "x^" << degree();
    for (int i = 0; i < degree(); ++i) {
      const std::int64_t coeff = tail_[i];
      const int power = degree() - 1 - i;
      if (coeff == 0) continue;
      out << (coeff < 0 ? " - " : " + ");
      const std::int64_t mag = coeff < 0 ? -coeff : coeff;
      if (mag != 1 || power == 0) out << mag;
      if (power >= 1) out << "x";
      if (power >= 2) out << "^" << power;
    }
    return out.str();
  }

  std::string tail_string() const {
    std::string s;
    for (std::size_t i = 0; i < tail_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(tail_[i]);
    }
    return s;
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  explicit IntPolynomial(std::vector<std::int64_t> tail) : tail_(std::move(tail)) {
    if (tail_.size() < 2 || tail_.size() > 4) {
      throw Error(ErrorKind::InvalidInput,
                  "expected 2 to 4 coefficients, got " + std::to_string(tail_.size()));
    }
    for (std::int64_t v : tail_) {
      if (v > kMaxCoefficient || v < -kMaxCoefficient) {
        throw Error(ErrorKind::InvalidParameter,
                    "coefficient " + std::to_string(v) + " exceeds magnitude 10^6");
      }
    }
  }

  std::vector<std::int64_t> tail_;
};

enum class RootKind {
  TwoDistinctReal,
  ComplexConjugatePair,
  ThreeDistinctReal,
  FourDistinctRealSymmetric,
  Other,
};

inline const char* to_string(RootKind kind) {
  switch (kind) {
    case RootKind::TwoDistinctReal: return "two-distinct-real";
    case RootKind::ComplexConjugatePair: return "complex-conjugate-pair";
    case RootKind::ThreeDistinctReal: return "three-distinct-real";
    case RootKind::FourDistinctRealSymmetric: return "four-distinct-real-symmetric";
    case RootKind::Other: return "other";
  }
  return "unknown";
}

/// Absolute error bound on every root reported by roots_numeric.
inline constexpr double kRootTolerance = 1e-10;

struct RootClassification {
  RootKind kind = RootKind::Other;
  std::vector<std::complex<double>> roots;
  double errorBound = kRootTolerance;
  /// gamma^2 = -c/a for the symmetric quartic structure.
  std::optional<Rational> gammaSq;
};

inline Integer discriminant_quadratic(const IntPolynomial& p) {
  if (p.degree() != 2) {
    throw Error(ErrorKind::DegreeMismatch, "discriminant_quadratic needs degree 2");
  }
  const Integer a = to_integer(p.a()), b = to_integer(p.b());
  return a * a - 4 * b;
}

inline Integer discriminant_cubic(const IntPolynomial& p) {
  if (p.degree() != 3) {
    throw Error(ErrorKind::DegreeMismatch, "discriminant_cubic needs degree 3");
  }
  const Integer a = to_integer(p.a()), b = to_integer(p.b()), c = to_integer(*p.c());
  return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

/// gamma^2 when p = (x^2 - gamma^2)(x^2 + a x + q) with four distinct real
/// roots, nullopt otherwise.
inline std::optional<Rational> detect_symmetric_quartic(const IntPolynomial& p) {
  if (p.degree() != 4) {
    throw Error(ErrorKind::DegreeMismatch, "detect_symmetric_quartic needs degree 4");
  }
  if (p.a() == 0) {
    throw Error(ErrorKind::InvalidFamily, "a must be nonzero");
  }
  const Rational a = to_rational(p.a()), b = to_rational(p.b());
  const Rational c = to_rational(*p.c()), d = to_rational(*p.d());
  Rational gammaSq = -c / a;
  gammaSq.canonicalize();
  if (gammaSq <= 0) return std::nullopt;
  const Rational q = b + gammaSq;
  if (d != -gammaSq * q) return std::nullopt;
  if (a * a - 4 * q <= 0) return std::nullopt;
  const Rational s = q + gammaSq;
  if (s * s - a * a * gammaSq == 0) return std::nullopt;
  return gammaSq;
}

/// Expands (x^2 - gammaSq)(x^2 + a x + q).
inline IntPolynomial synthesize_symmetric_quartic(std::int64_t a, std::int64_t q,
                                                  std::int64_t gammaSq) {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorKind::InvalidParameter, what);
  };
  if (a == 0) fail("a must be nonzero");
  if (gammaSq < 1) fail("gammaSq must be at least 1");
  const Integer A = to_integer(a), Q = to_integer(q), G = to_integer(gammaSq);
  if (A * A - 4 * Q <= 0) fail("a^2 - 4p must be positive");
  if ((Q + G) * (Q + G) == A * A * G) fail("(p + gammaSq)^2 must differ from a^2 gammaSq");
  const Integer b = Q - G, c = -A * G, d = -G * Q;
  for (const Integer* v : {&b, &c, &d}) {
    if (abs(*v) > kMaxCoefficient) fail("synthesized coefficient exceeds magnitude 10^6");
  }
  return IntPolynomial::quartic(a, to_int64(b), to_int64(c), to_int64(d));
}

namespace detail {

// Dense polynomial over Q, coefficients in ascending order, no trailing zeros.
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly derivative(const QPoly& p) {
  QPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
  trim(out);
  return out;
}

inline QPoly make_monic(QPoly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& v : p) v /= lead;
  return p;
}

// Quotient and remainder of num / den.
inline std::pair<QPoly, QPoly> divmod(QPoly num, const QPoly& den) {
  trim(num);
  if (num.size() < den.size()) return {QPoly{}, num};
  QPoly quo(num.size() - den.size() + 1);
  while (num.size() >= den.size() && !num.empty()) {
    const std::size_t shift = num.size() - den.size();
    const Rational f = num.back() / den.back();
    quo[shift] = f;
    for (std::size_t i = 0; i < den.size(); ++i) num[i + shift] -= f * den[i];
    num.pop_back();
    trim(num);
  }
  trim(quo);
  return {quo, num};
}

inline QPoly gcd(QPoly x, QPoly y) {
  trim(x);
  trim(y);
  while (!y.empty()) {
    QPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

// Yun's algorithm: returns (factor, multiplicity) pairs of a monic polynomial.
inline std::vector<std::pair<QPoly, int>> squarefree_factors(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly fp = derivative(f);
  QPoly g = gcd(f, fp);
  QPoly w = divmod(f, g).first;
  QPoly y = divmod(fp, g).first;
  int mult = 1;
  while (w.size() > 1) {
    QPoly wp = derivative(w);
    QPoly z = y;
    z.resize(std::max(z.size(), wp.size()));
    for (std::size_t i = 0; i < wp.size(); ++i) z[i] -= wp[i];
    trim(z);
    QPoly h = gcd(w, z);
    if (h.size() > 1) out.emplace_back(make_monic(h), mult);
    w = divmod(w, h).first;
    y = divmod(z, h).first;
    ++mult;
  }
  return out;
}

using CLD = std::complex<long double>;

inline CLD horner(const std::vector<long double>& p, CLD x) {
  CLD acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Roots of a squarefree monic polynomial with rational coefficients.
inline std::vector<CLD> squarefree_roots(const QPoly& f) {
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return {CLD(static_cast<long double>(-f[0].get_d()), 0)};
  if (deg == 2) {
    // Closed form, decided by the exact discriminant sign.
    const Rational disc = f[1] * f[1] - 4 * f[0];
    const long double s = f[1].get_d(), t = f[0].get_d();
    if (disc < 0) {
      const long double im = std::sqrt(static_cast<long double>(Rational(-disc).get_d())) / 2;
      return {CLD(-s / 2, -im), CLD(-s / 2, im)};
    }
    const long double root = std::sqrt(static_cast<long double>(disc.get_d()));
    const long double q = -(s + (s >= 0 ? root : -root)) / 2;
    return {CLD(q, 0), CLD(t / q, 0)};
  }

  std::vector<long double> coeffs;
  for (const auto& v : f) coeffs.push_back(static_cast<long double>(v.get_d()));
  std::vector<long double> dcoeffs;
  for (std::size_t i = 1; i < coeffs.size(); ++i) dcoeffs.push_back(coeffs[i] * i);

  long double radius = 0;
  for (std::size_t i = 0; i < deg; ++i) radius = std::max(radius, std::abs(coeffs[i]));
  radius += 1;

  // Aberth-Ehrlich iteration from points spread on the Cauchy circle.
  std::vector<CLD> z(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    const long double angle = 2 * 3.14159265358979323846L * k / deg + 0.4L;
    z[k] = std::polar(radius, angle);
  }
  for (int iter = 0; iter < 500; ++iter) {
    long double largest = 0;
    for (std::size_t i = 0; i < deg; ++i) {
      const CLD ratio = horner(coeffs, z[i]) / horner(dcoeffs, z[i]);
      CLD repulsion = 0;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != i) repulsion += 1.0L / (z[i] - z[j]);
      }
      const CLD step = ratio / (1.0L - ratio * repulsion);
      z[i] -= step;
      largest = std::max(largest, std::abs(step) / (1 + std::abs(z[i])));
    }
    if (largest < 1e-19L) break;
  }
  for (auto& root : z) {
    for (int k = 0; k < 3; ++k) {
      const CLD fp = horner(dcoeffs, root);
      if (fp == CLD(0)) break;
      root -= horner(coeffs, root) / fp;
    }
  }
  return z;
}

}  // namespace detail

/// All roots with multiplicity, sorted by real part and then imaginary part.
inline std::vector<std::complex<double>> roots_numeric(const IntPolynomial& p) {
  std::vector<std::complex<double>> out;
  for (const auto& [factor, mult] : detail::squarefree_factors(p.ascending_coefficients())) {
    for (const auto& z : detail::squarefree_roots(factor)) {
      long double re = z.real(), im = z.imag();
      if (std::abs(im) <= 1e-15L * (1 + std::abs(re))) im = 0;
      for (int k = 0; k < mult; ++k) {
        out.emplace_back(static_cast<double>(re), static_cast<double>(im));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

inline RootClassification classify(const IntPolynomial& p) {
  RootClassification out;
  switch (p.degree()) {
    case 2: {
      const Integer disc = discriminant_quadratic(p);
      if (disc > 0) out.kind = RootKind::TwoDistinctReal;
      if (disc < 0) out.kind = RootKind::ComplexConjugatePair;
      break;
    }
    case 3:
      if (discriminant_cubic(p) > 0) out.kind = RootKind::ThreeDistinctReal;
      break;
    case 4:
      if (p.a() != 0) {
        out.gammaSq = detect_symmetric_quartic(p);
        if (out.gammaSq) out.kind = RootKind::FourDistinctRealSymmetric;
      }
      break;
  }
  out.roots = roots_numeric(p);
  return out;
}

}  // namespace wrl
