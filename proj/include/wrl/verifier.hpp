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
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "wrl/common.hpp"
#include "wrl/construction.hpp"
#include "wrl/criteria.hpp"
#include "wrl/oracle.hpp"
#include "wrl/polynomial.hpp"
#include "wrl/svp.hpp"

namespace wrl {

/// Closed-form verdict source; swappable so a broken predicate can be
/// injected in tests.
using PredicateFn = std::function<CriterionVerdict(Family, std::int64_t, std::int64_t)>;

inline PredicateFn default_predicate() { return &wr_predicate; }

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool empty() const noexcept { return lo > hi; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct SweepSpec {
  Family family = Family::F2R;
  IntRange aRange;
  IntRange bRange;              // F2R, F2C, F3R
  IntRange cRange;              // F3R
  IntRange pRange;              // F4S, co-factor constant term
  std::vector<std::int64_t> gammaSq;  // F4S
  std::int64_t boxOverCover = 2;
  /// Valid instances cross-checked against the box oracle (all if fewer).
  std::size_t oracleSamples = 100;
  std::uint64_t seed = 20260415;
};

struct SweepRecord {
  explicit SweepRecord(IntPolynomial p) : poly(std::move(p)) {}

  IntPolynomial poly;
  std::optional<Family> family;
  bool familyValid = false;
  std::string invalidReason;

  bool theoremWR = false;
  bool oracleWR = false;
  bool agree = false;
  Rational lambda;
  std::size_t kissing = 0;
  Rational deltaSq;
  bool optimal = false;
  bool enlargedKissing = false;
  Branch branch = Branch::BNonNegative;
  Rational predictedMinimum;
  std::vector<CoordinateVector> minimalVectors;

  // Structural identities.
  double gramResidual = 0;
  bool gramWithinTolerance = false;
  bool detMatches = false;
  bool lemmaMatches = false;
  bool minimumMatchesCandidates = false;
  bool densityMatchesClosedForm = true;

  bool structural_ok() const {
    return !familyValid || (gramWithinTolerance && detMatches && lemmaMatches &&
                            minimumMatchesCandidates && densityMatchesClosedForm);
  }
};

struct SweepReport {
  SweepSpec spec;
  std::vector<SweepRecord> records;
  std::size_t totalPoints = 0;
  std::size_t validPoints = 0;
  std::size_t agreements = 0;
  std::vector<SweepRecord> mismatches;
  std::size_t optimalCount = 0;
  std::size_t enlargedKissingCount = 0;
  std::vector<std::string> structuralFailures;
  std::size_t oracleChecked = 0;
  std::vector<std::string> oracleFailures;
  long long wallTimeMillis = 0;

  bool passed() const {
    return mismatches.empty() && structuralFailures.empty() && oracleFailures.empty();
  }
};

namespace detail {

inline bool lemma_identity_holds(const LatticeInstance& inst) {
  const std::size_t n = inst.dimension();
  std::vector<std::int64_t> x(n, -3);
  while (true) {
    if (form_value(inst.gram, x) != lemma_norm(inst.family, inst.poly.a(), inst.poly.b(), x)) {
      return false;
    }
    std::size_t k = n;
    while (k > 0 && x[k - 1] == 3) x[--k] = -3;
    if (k == 0) return true;
    ++x[k - 1];
  }
}

inline SweepRecord evaluate(const IntPolynomial& p, std::optional<Family> expected,
                            const PredicateFn& predicate) {
  SweepRecord rec(p);
  if (p.a() == 0) {
    rec.family = expected;
    rec.invalidReason = "a must be nonzero";
    return rec;
  }
  const RootKind kind = classify(p).kind;
  const std::optional<Family> inferred = family_for(kind);
  rec.family = expected ? expected : inferred;
  if (!inferred || (expected && *inferred != *expected)) {
    rec.invalidReason = std::string("root structure is ") + to_string(kind);
    return rec;
  }
  rec.familyValid = true;

  const LatticeInstance inst = build(p);
  const MinResult m = shortest_vectors(inst.gram);
  const CriterionVerdict v = predicate(inst.family, p.a(), p.b());

  rec.theoremWR = v.wellRounded;
  rec.oracleWR = m.wellRounded;
  rec.agree = rec.theoremWR == rec.oracleWR;
  rec.lambda = m.lambdaMin;
  rec.kissing = m.kissingNumber;
  rec.deltaSq = center_density_sq(inst.gram, m).value;
  rec.optimal = v.optimalDensity;
  rec.enlargedKissing = v.enlargedKissing;
  rec.branch = v.branch;
  rec.predictedMinimum = v.predictedMinimum;
  rec.minimalVectors = m.minimalVectors;

  rec.gramResidual = gram_residual(inst);
  rec.gramWithinTolerance = rec.gramResidual <= gram_tolerance(inst.gram);
  rec.detMatches = inst.gram.det() == det_closed_form(inst.family, p.a(), p.b());
  rec.lemmaMatches = lemma_identity_holds(inst);
  const auto candidates = candidate_minima(inst.family, p.a(), p.b());
  rec.minimumMatchesCandidates =
      m.lambdaMin == *std::min_element(candidates.begin(), candidates.end());
  if (m.wellRounded && wr_predicate(inst.family, p.a(), p.b()).wellRounded) {
    rec.densityMatchesClosedForm = density_closed_form(inst.family, p.a(), p.b()) == rec.deltaSq;
  }
  return rec;
}

inline std::string describe(const SweepRecord& r) {
  std::ostringstream out;
  out << (r.family ? to_string(*r.family) : "none") << " (" << r.poly.tail_string() << ")";
  return out.str();
}

inline void validate(const SweepSpec& spec) {
  const auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidSpec, what); };
  if (spec.aRange.empty()) bad("empty a range");
  if (spec.boxOverCover < 0) bad("box margin must be non-negative");
  const auto in_limits = [](std::int64_t v) { return v >= -kMaxCoefficient && v <= kMaxCoefficient; };
  for (const IntRange* r : {&spec.aRange, &spec.bRange, &spec.cRange, &spec.pRange}) {
    if (!in_limits(r->lo) || !in_limits(r->hi)) bad("range endpoint exceeds magnitude 10^6");
  }
  for (std::int64_t g : spec.gammaSq)
    if (!in_limits(g)) bad("gamma-sq exceeds magnitude 10^6");
  switch (spec.family) {
    case Family::F3R:
      if (spec.cRange.empty()) bad("empty c range");
      [[fallthrough]];
    case Family::F2R:
    case Family::F2C:
      if (spec.bRange.empty()) bad("empty b range");
      break;
    case Family::F4S:
      if (spec.pRange.empty()) bad("empty p range");
      if (spec.gammaSq.empty()) bad("gamma-sq list is empty");
      for (std::int64_t g : spec.gammaSq)
        if (g < 1) bad("gamma-sq values must be positive");
      break;
  }
}

inline std::vector<IntPolynomial> grid(const SweepSpec& spec) {
  std::vector<IntPolynomial> out;
  for (std::int64_t a = spec.aRange.lo; a <= spec.aRange.hi; ++a) {
    if (a == 0) continue;
    switch (spec.family) {
      case Family::F2R:
      case Family::F2C:
        for (std::int64_t b = spec.bRange.lo; b <= spec.bRange.hi; ++b)
          out.push_back(IntPolynomial::quadratic(a, b));
        break;
      case Family::F3R:
        for (std::int64_t b = spec.bRange.lo; b <= spec.bRange.hi; ++b)
          for (std::int64_t c = spec.cRange.lo; c <= spec.cRange.hi; ++c)
            out.push_back(IntPolynomial::cubic(a, b, c));
        break;
      case Family::F4S:
        for (std::int64_t p = spec.pRange.lo; p <= spec.pRange.hi; ++p)
          for (std::int64_t g : spec.gammaSq)
            // (x² − g)(x² + a x + p), validity decided later by classification.
            out.push_back(IntPolynomial::quartic(a, p - g, -a * g, -g * p));
        break;
    }
  }
  return out;
}

}  // namespace detail

/// Single-polynomial version of a sweep point; the family is inferred.
inline SweepRecord cross_check_instance(const IntPolynomial& p,
                                        const PredicateFn& predicate = default_predicate()) {
  return detail::evaluate(p, std::nullopt, predicate);
}

inline SweepReport run_sweep(const SweepSpec& spec,
                             const PredicateFn& predicate = default_predicate(),
                             std::size_t threads = 1) {
  const auto start = std::chrono::steady_clock::now();
  detail::validate(spec);
  std::vector<IntPolynomial> points;
  try {
    points = detail::grid(spec);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidSpec, e.what());
  }
  if (points.empty()) throw Error(ErrorKind::InvalidSpec, "empty effective grid");
  std::sort(points.begin(), points.end(), [](const IntPolynomial& x, const IntPolynomial& y) {
    return std::lexicographical_compare(x.tail().begin(), x.tail().end(), y.tail().begin(),
                                        y.tail().end());
  });

  SweepReport report;
  report.spec = spec;
  report.records.resize(points.size(), SweepRecord(points.front()));
  threads = std::max<std::size_t>(1, std::min(threads, points.size()));
  std::vector<std::exception_ptr> errors(threads);
  const auto work = [&](std::size_t worker) {
    try {
      for (std::size_t i = worker; i < points.size(); i += threads)
        report.records[i] = detail::evaluate(points[i], spec.family, predicate);
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<std::size_t> valid;
  report.totalPoints = report.records.size();
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const SweepRecord& r = report.records[i];
    if (!r.familyValid) continue;
    valid.push_back(i);
    if (r.agree) {
      ++report.agreements;
    } else {
      report.mismatches.push_back(r);
    }
    if (r.optimal) ++report.optimalCount;
    if (r.enlargedKissing) ++report.enlargedKissingCount;
    if (!r.structural_ok()) report.structuralFailures.push_back(detail::describe(r));
  }
  report.validPoints = valid.size();

  if (valid.size() > spec.oracleSamples) {
    std::mt19937_64 rng(spec.seed);
    std::shuffle(valid.begin(), valid.end(), rng);
    valid.resize(spec.oracleSamples);
    std::sort(valid.begin(), valid.end());
  }
  for (std::size_t i : valid) {
    const SweepRecord& r = report.records[i];
    const auto box = oracle::box_shortest_vectors(build(r.poly).gram, spec.boxOverCover);
    ++report.oracleChecked;
    if (box.lambdaMin != r.lambda || box.minimalVectors != r.minimalVectors) {
      report.oracleFailures.push_back(detail::describe(r));
    }
  }

  report.wallTimeMillis = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  return report;
}

// ---------------------------------------------------------------------------
// Serialization. Neither format carries timing, so identical specs produce
// identical bytes.

inline constexpr const char* kCsvHeader =
    "family,a,b,c,d,valid,theorem_wr,oracle_wr,agree,lambda,kissing,delta_sq_num,"
    "delta_sq_den,optimal,enlarged_kissing";

inline void write_csv_row(std::ostream& out, const SweepRecord& r) {
  const auto flag = [](bool v) { return v ? "true" : "false"; };
  const auto opt = [](const std::optional<std::int64_t>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  out << (r.family ? tag(*r.family) : "none") << ',' << r.poly.a() << ',' << r.poly.b() << ','
      << opt(r.poly.c()) << ',' << opt(r.poly.d()) << ',' << flag(r.familyValid) << ',';
  if (r.familyValid) {
    out << flag(r.theoremWR) << ',' << flag(r.oracleWR) << ',' << flag(r.agree) << ','
        << r.lambda.get_str() << ',' << r.kissing << ',' << r.deltaSq.get_num().get_str() << ','
        << r.deltaSq.get_den().get_str() << ',' << flag(r.optimal) << ','
        << flag(r.enlargedKissing);
  } else {
    out << ",,,,,,,,";
  }
  out << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) write_csv_row(out, r);
}

inline void write_csv(std::ostream& out, const SweepReport& report) {
  write_csv(out, report.records);
}

namespace detail {

inline nlohmann::ordered_json json_integer(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline nlohmann::ordered_json json_rational_value(const Rational& q) {
  if (q.get_den() == 1) return json_integer(q.get_num());
  return q.get_str();
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const SweepRecord& r) {
  nlohmann::ordered_json j;
  j["family"] = r.family ? tag(*r.family) : "none";
  j["a"] = r.poly.a();
  j["b"] = r.poly.b();
  j["c"] = r.poly.c() ? nlohmann::ordered_json(*r.poly.c()) : nullptr;
  j["d"] = r.poly.d() ? nlohmann::ordered_json(*r.poly.d()) : nullptr;
  j["valid"] = r.familyValid;
  if (!r.familyValid) return j;
  j["theorem_wr"] = r.theoremWR;
  j["oracle_wr"] = r.oracleWR;
  j["agree"] = r.agree;
  j["lambda"] = detail::json_rational_value(r.lambda);
  j["kissing"] = r.kissing;
  j["delta_sq_num"] = detail::json_integer(r.deltaSq.get_num());
  j["delta_sq_den"] = detail::json_integer(r.deltaSq.get_den());
  j["optimal"] = r.optimal;
  j["enlarged_kissing"] = r.enlargedKissing;
  return j;
}

inline nlohmann::ordered_json to_json(const SweepSpec& s) {
  nlohmann::ordered_json j;
  j["family"] = tag(s.family);
  j["a"] = {s.aRange.lo, s.aRange.hi};
  if (s.family == Family::F4S) {
    j["p"] = {s.pRange.lo, s.pRange.hi};
    j["gamma_sq"] = s.gammaSq;
  } else {
    j["b"] = {s.bRange.lo, s.bRange.hi};
  }
  if (s.family == Family::F3R) j["c"] = {s.cRange.lo, s.cRange.hi};
  j["box_over_cover"] = s.boxOverCover;
  j["oracle_samples"] = s.oracleSamples;
  j["seed"] = s.seed;
  return j;
}

inline nlohmann::ordered_json to_json(const SweepReport& report) {
  nlohmann::ordered_json j;
  j["spec"] = to_json(report.spec);
  nlohmann::ordered_json summary;
  summary["total_points"] = report.totalPoints;
  summary["valid_points"] = report.validPoints;
  summary["agreements"] = report.agreements;
  summary["mismatches"] = report.mismatches.size();
  summary["optimal_count"] = report.optimalCount;
  summary["enlarged_kissing_count"] = report.enlargedKissingCount;
  summary["structural_failures"] = report.structuralFailures;
  summary["oracle_checked"] = report.oracleChecked;
  summary["oracle_failures"] = report.oracleFailures;
  j["summary"] = summary;
  nlohmann::ordered_json details = nlohmann::ordered_json::array();
  for (const auto& r : report.mismatches) {
    nlohmann::ordered_json d = to_json(r);
    d["branch"] = to_string(r.branch);
    d["predicted_minimum"] = detail::json_rational_value(r.predictedMinimum);
    nlohmann::ordered_json vecs = nlohmann::ordered_json::array();
    for (const auto& v : r.minimalVectors) vecs.push_back(v.coords);
    d["minimal_vectors"] = vecs;
    details.push_back(d);
  }
  j["mismatch_details"] = details;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : report.records) records.push_back(to_json(r));
  j["records"] = records;
  return j;
}

inline void write_json(std::ostream& out, const SweepReport& report) {
  out << to_json(report).dump(2) << '\n';
}

}  // namespace wrl
