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

#include <chrono>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "wrl/verifier.hpp"

namespace wrl {

/// Default grids: |a| <= 12, |b| <= 12 for the quadratic and cubic families
/// (c in [-8, 8] for cubics), and a in [-10, 10], p in [-6, 6], gamma^2 in
/// {1, 4} for symmetric quartics.
inline std::vector<SweepSpec> default_sweeps() {
  SweepSpec f2r;
  f2r.family = Family::F2R;
  f2r.aRange = {-12, 12};
  f2r.bRange = {-12, 12};
  SweepSpec f2c = f2r;
  f2c.family = Family::F2C;
  SweepSpec f3r = f2r;
  f3r.family = Family::F3R;
  f3r.cRange = {-8, 8};
  SweepSpec f4s;
  f4s.family = Family::F4S;
  f4s.aRange = {-10, 10};
  f4s.pRange = {-6, 6};
  f4s.gammaSq = {1, 4};
  return {f2r, f2c, f3r, f4s};
}

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifySummary {
  std::vector<SweepReport> reports;
  std::vector<CheckResult> checks;
  std::size_t instances = 0;
  std::size_t mismatches = 0;
  std::size_t goldenPassed = 0;
  std::size_t goldenTotal = 0;
  long long wallTimeMillis = 0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  std::string headline() const {
    std::ostringstream out;
    out << reports.size() << " families, " << instances << " instances, " << mismatches
        << " mismatches, " << goldenPassed << '/' << goldenTotal << " golden values";
    return out.str();
  }
};

namespace detail {

struct Golden {
  std::string name;
  IntPolynomial poly;
  std::optional<Rational> deltaSq;
  std::optional<std::size_t> kissing;
};

inline std::vector<Golden> golden_values() {
  return {
      {"x^2+6x+6 delta^2 = 1/12", IntPolynomial::quadratic(6, 6), Rational(1, 12), 6},
      {"x^2+2x-2 delta^2 = 1/12", IntPolynomial::quadratic(2, -2), Rational(1, 12), 6},
      {"x^2+3x+3 delta^2 = 1/12", IntPolynomial::quadratic(3, 3), Rational(1, 12), 6},
      {"x^2+x+1 delta^2 = 1/12", IntPolynomial::quadratic(1, 1), Rational(1, 12), 6},
      {"x^3+4x^2+4x+1 fcc delta^2 = 1/32", IntPolynomial::cubic(4, 4, 1), Rational(1, 32), 12},
      {"x^3+x^2-x delta^2 = 27/1024", IntPolynomial::cubic(1, -1, 0), Rational(27, 1024), 8},
      {"x^4+6x^3+6x^2-6x-7 kissing 12", IntPolynomial::quartic(6, 6, -6, -7), {}, 12},
      {"x^4+4x^3+x^2-4x-2 kissing 8", IntPolynomial::quartic(4, 1, -4, -2), {}, 8},
  };
}

inline CheckResult c_independence(const SweepReport& report) {
  using Key = std::pair<std::int64_t, std::int64_t>;
  std::map<Key, const SweepRecord*> first;
  CheckResult check{"f3r records independent of c", true, ""};
  for (const auto& r : report.records) {
    if (!r.familyValid) continue;
    auto [it, inserted] = first.emplace(Key{r.poly.a(), r.poly.b()}, &r);
    if (inserted) continue;
    const SweepRecord& s = *it->second;
    const bool same = s.theoremWR == r.theoremWR && s.oracleWR == r.oracleWR &&
                      s.lambda == r.lambda && s.kissing == r.kissing && s.deltaSq == r.deltaSq &&
                      s.optimal == r.optimal && s.enlargedKissing == r.enlargedKissing &&
                      s.minimalVectors == r.minimalVectors;
    if (!same && check.passed) {
      check.passed = false;
      check.detail = "(" + r.poly.tail_string() + ") differs from (" + s.poly.tail_string() + ")";
    }
  }
  return check;
}

// Equality cases have kissing 6 in dimension 2 and 12 for quartics; no quartic
// ever reaches 24.
inline CheckResult boundary_kissing(const SweepReport& report) {
  CheckResult check{std::string(tag(report.spec.family)) + " boundary kissing numbers", true, ""};
  for (const auto& r : report.records) {
    if (!r.familyValid) continue;
    std::optional<std::size_t> expected;
    switch (report.spec.family) {
      case Family::F2R:
      case Family::F2C:
        if (r.enlargedKissing) expected = 6;
        break;
      case Family::F4S:
        if (r.enlargedKissing) expected = 12;
        if (r.kissing == 24 && check.passed) {
          check.passed = false;
          check.detail = "(" + r.poly.tail_string() + ") has 24 minimal vectors";
        }
        break;
      case Family::F3R:
        if (r.optimal) expected = 12;
        break;
    }
    if (expected && r.kissing != *expected && check.passed) {
      check.passed = false;
      check.detail = "(" + r.poly.tail_string() + ") has kissing " + std::to_string(r.kissing) +
                     ", expected " + std::to_string(*expected);
    }
  }
  return check;
}

}  // namespace detail

/// Default grids for all four families, structural identities, box-oracle
/// samples and golden values.
inline VerifySummary run_verification(const PredicateFn& predicate = default_predicate(),
                                      std::size_t threads = 1) {
  const auto start = std::chrono::steady_clock::now();
  VerifySummary out;
  for (const SweepSpec& spec : default_sweeps()) {
    SweepReport report = run_sweep(spec, predicate, threads);
    const std::string name = tag(spec.family);
    out.instances += report.validPoints;
    out.mismatches += report.mismatches.size();

    CheckResult wr{name + " theorem vs oracle", report.mismatches.empty(), ""};
    for (const auto& m : report.mismatches) {
      wr.detail += (wr.detail.empty() ? "" : " ") + std::string("(a,b)=(") +
                   std::to_string(m.poly.a()) + "," + std::to_string(m.poly.b()) + ")";
    }
    out.checks.push_back(wr);

    CheckResult structural{name + " structural identities", report.structuralFailures.empty(), ""};
    for (const auto& s : report.structuralFailures) structural.detail += s + " ";
    out.checks.push_back(structural);

    CheckResult sampled{name + " box oracle on " + std::to_string(report.oracleChecked) + " samples",
                        report.oracleFailures.empty() && report.oracleChecked > 0, ""};
    for (const auto& s : report.oracleFailures) sampled.detail += s + " ";
    out.checks.push_back(sampled);

    out.checks.push_back(detail::boundary_kissing(report));
    if (spec.family == Family::F3R) out.checks.push_back(detail::c_independence(report));
    out.reports.push_back(std::move(report));
  }

  for (const auto& g : detail::golden_values()) {
    const SweepRecord r = cross_check_instance(g.poly, predicate);
    CheckResult check{"golden " + g.name, r.familyValid, ""};
    if (g.deltaSq && r.deltaSq != *g.deltaSq) {
      check.passed = false;
      check.detail = "got delta^2 = " + r.deltaSq.get_str();
    }
    if (g.kissing && r.kissing != *g.kissing) {
      check.passed = false;
      check.detail += (check.detail.empty() ? "" : ", ") + std::string("got kissing ") +
                      std::to_string(r.kissing);
    }
    ++out.goldenTotal;
    if (check.passed) ++out.goldenPassed;
    out.checks.push_back(check);
  }

  out.wallTimeMillis = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return out;
}

inline nlohmann::ordered_json to_json(const VerifySummary& s) {
  nlohmann::ordered_json j;
  j["passed"] = s.passed();
  j["families"] = s.reports.size();
  j["instances"] = s.instances;
  j["mismatches"] = s.mismatches;
  j["golden_passed"] = s.goldenPassed;
  j["golden_total"] = s.goldenTotal;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : s.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace wrl
