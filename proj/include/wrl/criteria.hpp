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
#include <cstdint>
#include <vector>

#include "wrl/common.hpp"
#include "wrl/construction.hpp"

namespace wrl {

enum class Branch { BNonNegative, BNegative, ComplexBand };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::BNonNegative: return "b>=0";
    case Branch::BNegative: return "b<0";
    case Branch::ComplexBand: return "complex-band";
  }
  return "?";
}

struct CriterionVerdict {
  Family family = Family::F2R;
  bool wellRounded = false;
  /// Highest center density in the dimension (dims 2 and 3 only).
  bool optimalDensity = false;
  /// Equality case of the criterion, where extra vectors join S(Λ).
  bool enlargedKissing = false;
  Branch branch = Branch::BNonNegative;
  Rational predictedMinimum;
};

/// Norms of the short candidates x ∈ {-1,0,1}^n, one value per orbit.
inline std::vector<Rational> candidate_minima(Family family, std::int64_t a_, std::int64_t b_) {
  const Rational a = to_rational(a_), b = to_rational(b_);
  const Rational a2 = a * a;
  switch (family) {
    case Family::F2R:
    case Family::F4S: return {a2 - 2 * b, 2 * a2, 2 * a2 - 8 * b};
    case Family::F2C: return {b, a2, 4 * b - a2};
    case Family::F3R: return {a2 - 2 * b, 2 * a2 - 2 * b, 2 * a2 - 6 * b, 3 * a2, 3 * a2 - 8 * b};
  }
  return {};
}

/// Closed-form well-roundedness and optimality test for a family instance.
/// Callers are responsible for the root-structure hypothesis.
inline CriterionVerdict wr_predicate(Family family, std::int64_t a_, std::int64_t b_) {
  if (a_ == 0) throw Error(ErrorKind::InvalidFamily, "a must be nonzero");
  const Integer a = to_integer(a_), b = to_integer(b_);
  const Integer a2 = a * a;

  CriterionVerdict v;
  v.family = family;
  switch (family) {
    case Family::F2R:
    case Family::F4S:
      v.branch = b >= 0 ? Branch::BNonNegative : Branch::BNegative;
      v.wellRounded = b >= 0 ? a2 >= 6 * b : a2 >= -2 * b;
      v.enlargedKissing = a2 == 6 * b || a2 == -2 * b;
      // In dimension 4 the equality cases reach 12 minimal vectors, not 24.
      v.optimalDensity = family == Family::F2R && v.enlargedKissing;
      break;
    case Family::F2C:
      v.branch = Branch::ComplexBand;
      v.wellRounded = b <= a2 && a2 <= 3 * b;
      v.enlargedKissing = a2 == b || a2 == 3 * b;
      v.optimalDensity = v.enlargedKissing;
      break;
    case Family::F3R:
      v.branch = b >= 0 ? Branch::BNonNegative : Branch::BNegative;
      v.wellRounded = b >= 0 ? a2 >= 4 * b : a2 >= -b;
      v.enlargedKissing = a2 == 4 * b || a2 == -b;
      v.optimalDensity = a2 == 4 * b;
      break;
  }
  const auto candidates = candidate_minima(family, a_, b_);
  v.predictedMinimum = *std::min_element(candidates.begin(), candidates.end());
  return v;
}

/// δ² from the coefficients alone; only meaningful for well-rounded instances.
inline Rational density_closed_form(Family family, std::int64_t a, std::int64_t b) {
  const CriterionVerdict v = wr_predicate(family, a, b);
  if (!v.wellRounded) {
    throw Error(ErrorKind::NotApplicable, "density formula requires a well-rounded instance");
  }
  const Rational base = v.predictedMinimum / 4;
  Rational out = 1;
  for (std::size_t i = 0; i < dimension(family); ++i) out *= base;
  out /= det_closed_form(family, a, b);
  out.canonicalize();
  return out;
}

}  // namespace wrl
