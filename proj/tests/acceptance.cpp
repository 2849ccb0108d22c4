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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Criterion formulas are restated here rather than taken from
// wr_predicate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "wrl/cli.hpp"
#include "wrl/verification.hpp"

namespace {

using wrl::Family;
using wrl::IntPolynomial;
using wrl::Rational;
using wrl::SweepReport;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    passed = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o, const std::string& info) {
  std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " ("
            << info << ")";
  if (!o.passed) std::cout << " -- " << o.detail;
  std::cout << std::endl;
  if (!o.passed) ++failures;
}

bool dim2_real_wr(long a, long b) { return (b >= 0 && a * a >= 6 * b) || (b < 0 && a * a >= -2 * b); }
bool dim2_complex_wr(long a, long b) { return b <= a * a && a * a <= 3 * b; }
bool cubic_wr(long a, long b) { return (b >= 0 && a * a >= 4 * b) || (b < 0 && a * a >= -b); }

struct Swept {
  SweepReport report;
  double seconds;
};

Swept sweep(const wrl::SweepSpec& spec) {
  const auto start = Clock::now();
  SweepReport r = wrl::run_sweep(spec, wrl::default_predicate(), 1);
  return {std::move(r), seconds_since(start)};
}

// Compares oracle verdicts against the restated criterion on every valid record.
void equivalence(const Swept& s, std::size_t expectedValid,
                 const std::function<bool(long, long)>& criterion, double limit, Outcome& o) {
  std::size_t mismatches = 0;
  for (const auto& r : s.report.records) {
    if (!r.familyValid) continue;
    if (r.oracleWR != criterion(r.poly.a(), r.poly.b())) {
      if (mismatches == 0) o.require(false, "mismatch at (" + r.poly.tail_string() + ")");
      ++mismatches;
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.require(s.report.mismatches.empty(), "library predicate disagrees with oracle");
  o.require(s.report.validPoints == expectedValid,
            "valid instances " + std::to_string(s.report.validPoints) + " != expected " +
                std::to_string(expectedValid));
  o.require(s.seconds < limit, "took " + std::to_string(s.seconds) + " s");
}

std::string info(const Swept& s) {
  std::ostringstream out;
  out << s.report.validPoints << " instances, " << s.report.mismatches.size() << " mismatches, "
      << static_cast<long>(s.seconds * 1000) << " ms";
  return out.str();
}

}  // namespace

int main() {
  const auto sweeps = wrl::default_sweeps();
  const Swept f2r = sweep(sweeps[0]);
  const Swept f2c = sweep(sweeps[1]);
  const Swept f3r = sweep(sweeps[2]);
  const Swept f4s = sweep(sweeps[3]);

  std::size_t realCount = 0, complexCount = 0, cubicCount = 0, quarticCount = 0;
  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b) {
      if (a == 0) continue;
      if (a * a - 4 * b > 0) ++realCount;
      if (a * a - 4 * b < 0) ++complexCount;
      for (long c = -8; c <= 8; ++c)
        if (wrl::discriminant_cubic(IntPolynomial::cubic(a, b, c)) > 0) ++cubicCount;
    }
  for (long a = -10; a <= 10; ++a)
    for (long p = -6; p <= 6; ++p)
      for (long g : {1L, 4L}) {
        if (a == 0 || a * a - 4 * p <= 0 || (p + g) * (p + g) == a * a * g) continue;
        ++quarticCount;
      }

  {
    Outcome o;
    equivalence(f2r, realCount, dim2_real_wr, 2.0, o);
    report(1, "F2R theorem equivalence", o, info(f2r));
  }
  {
    Outcome o;
    equivalence(f2c, complexCount, dim2_complex_wr, 2.0, o);
    report(2, "F2C theorem equivalence", o, info(f2c));
  }
  {
    Outcome o;
    equivalence(f3r, cubicCount, cubic_wr, 5.0, o);
    o.require(wrl::detail::c_independence(f3r.report).passed, "verdict depends on c");
    report(3, "F3R theorem equivalence, independent of c", o, info(f3r));
  }
  {
    Outcome o;
    equivalence(f4s, quarticCount, dim2_real_wr, 5.0, o);
    for (const auto& r : f4s.report.records) {
      if (!r.familyValid) continue;
      const auto gammaSq = wrl::detect_symmetric_quartic(r.poly);
      if (!gammaSq || *gammaSq < 1) o.require(false, "(" + r.poly.tail_string() + ") not symmetric");
    }
    report(4, "F4S theorem equivalence", o, info(f4s));
  }

  {
    Outcome o;
    struct Golden {
      IntPolynomial poly;
      Rational deltaSq;
      double delta;
    };
    const double nan = std::nan("");
    const Golden golden[] = {
        {IntPolynomial::quadratic(6, 6), Rational(1, 12), nan},
        {IntPolynomial::quadratic(2, -2), Rational(1, 12), nan},
        {IntPolynomial::quadratic(3, 3), Rational(1, 12), nan},
        {IntPolynomial::quadratic(1, 1), Rational(1, 12), nan},
        {IntPolynomial::cubic(1, -1, 0), Rational(27, 1024), 0.16238},
        {IntPolynomial::cubic(4, 4, 1), Rational(1, 32), 0.17679},
    };
    std::string values;
    for (const auto& g : golden) {
      const auto inst = wrl::build(g.poly);
      const auto m = wrl::shortest_vectors(inst.gram);
      const auto d = wrl::center_density_sq(inst.gram, m);
      o.require(d.value == g.deltaSq, g.poly.to_string() + " gives " + d.value.get_str());
      if (!std::isnan(g.delta)) {
        const double diff = std::abs(d.numericApprox - g.delta);
        std::ostringstream why;
        why << g.poly.to_string() << ": delta " << std::setprecision(8) << d.numericApprox
            << " vs reference " << g.delta << ", |diff| " << std::setprecision(3) << diff
            << " > 5e-06";
        o.require(diff <= 5e-6, why.str());
        values += (values.empty() ? "" : ", ") + wrl::cli::detail::fmt6(d.numericApprox);
      }
    }
    report(5, "golden densities", o, "6 polynomials, delta " + values);
  }

  {
    Outcome o;
    std::size_t boundary = 0;
    for (const Swept* s : {&f2r, &f2c}) {
      for (const auto& r : s->report.records) {
        if (!r.familyValid) continue;
        const long a2 = r.poly.a() * r.poly.a(), b = r.poly.b();
        const bool edge = s == &f2r ? (a2 == 6 * b || a2 == -2 * b) : (a2 == b || a2 == 3 * b);
        if (!edge) continue;
        ++boundary;
        o.require(r.kissing == 6, "(" + r.poly.tail_string() + ") kissing " +
                                      std::to_string(r.kissing));
      }
    }
    o.require(boundary > 0, "no boundary instances in the sweep");
    const auto kissing = [](const IntPolynomial& p) {
      return wrl::shortest_vectors(wrl::build(p).gram).kissingNumber;
    };
    o.require(kissing(IntPolynomial::quartic(6, 6, -6, -7)) == 12, "x^4+6x^3+6x^2-6x-7");
    o.require(kissing(IntPolynomial::quartic(4, 1, -4, -2)) == 8, "x^4+4x^3+x^2-4x-2");
    std::size_t maxQuartic = 0;
    for (const auto& r : f4s.report.records)
      if (r.familyValid) maxQuartic = std::max(maxQuartic, r.kissing);
    o.require(maxQuartic < 24, "a quartic instance reaches 24 minimal vectors");
    report(6, "boundary kissing numbers", o,
           std::to_string(boundary) + " dimension-2 boundary instances, max quartic kissing " +
               std::to_string(maxQuartic));
  }

  {
    Outcome o;
    std::size_t checked = 0;
    double worst = 0;
    for (const Swept* s : {&f2r, &f2c, &f3r, &f4s}) {
      for (const auto& r : s->report.records) {
        if (!r.familyValid) continue;
        ++checked;
        worst = std::max(worst, r.gramResidual);
        const std::string at = "(" + r.poly.tail_string() + ")";
        o.require(r.detMatches, at + " determinant");
        o.require(r.gramResidual <= 1e-8, at + " residual");
        o.require(r.lemmaMatches, at + " norm formula");
      }
    }
    std::ostringstream out;
    out << checked << " instances, max |G - MM^t| " << worst;
    report(7, "structural identities", o, out.str());
  }

  {
    Outcome o;
    std::size_t total = 0;
    for (const Swept* s : {&f2r, &f2c, &f3r, &f4s}) {
      const auto& r = s->report;
      total += r.oracleChecked;
      o.require(r.oracleChecked == 100, std::string(wrl::tag(r.spec.family)) + " sampled " +
                                            std::to_string(r.oracleChecked));
      for (const auto& f : r.oracleFailures) o.require(false, f);
    }
    report(8, "enumeration equals box oracle", o, std::to_string(total) + " samples");
  }

  {
    Outcome o;
    std::ostringstream out, err;
    const auto start = Clock::now();
    const int code = wrl::cli::run({"verify"}, out, err);
    const double secs = seconds_since(start);
    o.require(code == 0, "exit code " + std::to_string(code) + ": " + out.str() + err.str());
    o.require(secs < 15, "took " + std::to_string(secs) + " s");
    std::string headline = out.str();
    while (!headline.empty() && headline.back() == '\n') headline.pop_back();
    report(9, "verify end to end", o, headline);
  }

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
