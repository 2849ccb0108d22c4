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

// Command-line front end. Kept in a header so tests can drive it in-process
// with captured streams and an injected predicate.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wrl/construction.hpp"
#include "wrl/criteria.hpp"
#include "wrl/polynomial.hpp"
#include "wrl/svp.hpp"
#include "wrl/verification.hpp"
#include "wrl/verifier.hpp"

namespace wrl::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kUnsupported = 2,
  kVerificationFailed = 3,
};

struct Hooks {
  PredicateFn predicate = default_predicate();
};

enum class Format { Table, Json, Csv };

namespace detail {

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidFamily:
    case ErrorKind::UnsupportedStructure:
    case ErrorKind::UnsupportedDimension:
    case ErrorKind::NotApplicable: return kUnsupported;
    case ErrorKind::Internal: return kVerificationFailed;
    default: return kUsage;
  }
}

inline std::string fmt6(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

inline std::string yes(bool v) { return v ? "yes" : "no"; }

inline std::string coords(const CoordinateVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string gram_text(const ExactGram& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < g.dimension(); ++j) s += (j ? ", " : "") + g(i, j).get_str();
    s += "]";
  }
  return s + "]";
}

inline std::string root_text(const std::complex<double>& z) {
  if (z.imag() == 0) return fmt6(z.real());
  return fmt6(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt6(std::abs(z.imag())) + "i";
}

inline std::vector<double> embed(const CoordinateVector& v, const SquareMatrix<double>& m) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[j] += static_cast<double>(v[i]) * m(i, j);
  return out;
}

// Writes to --out when given, otherwise to the primary stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::InvalidInput, "cannot open " + path + " for writing");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct Analysis {
  LatticeInstance inst;
  MinResult min;
  CriterionVerdict verdict;
  CenterDensitySq density;
};

inline Analysis analyze(const IntPolynomial& p, const Hooks& hooks) {
  LatticeInstance inst = build(p);
  MinResult m = shortest_vectors(inst.gram);
  CriterionVerdict v = hooks.predicate(inst.family, p.a(), p.b());
  CenterDensitySq d = center_density_sq(inst.gram, m);
  return {std::move(inst), std::move(m), std::move(v), std::move(d)};
}

inline void print_analysis_table(std::ostream& out, const Analysis& an) {
  const auto& inst = an.inst;
  const auto row = [&](const std::string& key, const std::string& value) {
    out << std::left << std::setw(18) << key << value << '\n';
  };
  row("polynomial", inst.poly.to_string());
  row("family", std::string(to_string(inst.family)) + " (dimension " +
                    std::to_string(inst.dimension()) + ")");
  std::string roots;
  for (const auto& z : inst.roots.roots) roots += (roots.empty() ? "" : ", ") + root_text(z);
  row("roots", roots);
  for (std::size_t i = 0; i < inst.genMatrix.size(); ++i) {
    std::string r;
    for (std::size_t j = 0; j < inst.genMatrix.size(); ++j)
      r += (j ? ", " : "") + fmt6(inst.genMatrix(i, j));
    row(i == 0 ? "generator rows" : "", "(" + r + ")");
  }
  row("gram", gram_text(inst.gram));
  row("det(G)", inst.gram.det().get_str() + " (closed form " + inst.detClosedForm.get_str() +
                    (inst.gram.det() == inst.detClosedForm ? ", match)" : ", MISMATCH)"));
  row("minimum", an.min.lambdaMin.get_str());
  row("kissing number", std::to_string(an.min.kissingNumber));
  row("well-rounded", "theorem " + yes(an.verdict.wellRounded) + ", oracle " +
                          yes(an.min.wellRounded) +
                          (an.verdict.wellRounded == an.min.wellRounded ? " (agree)" : " (DISAGREE)"));
  row("delta^2", an.density.value.get_str());
  row("delta", fmt6(an.density.numericApprox));
  row("optimal density", yes(an.verdict.optimalDensity));
  row("enlarged kissing", yes(an.verdict.enlargedKissing));
}

inline nlohmann::ordered_json analysis_json(const Analysis& an) {
  const auto& inst = an.inst;
  nlohmann::ordered_json j;
  j["polynomial"] = inst.poly.to_string();
  j["coefficients"] = std::vector<std::int64_t>(inst.poly.tail().begin(), inst.poly.tail().end());
  j["family"] = tag(inst.family);
  j["dimension"] = inst.dimension();
  nlohmann::ordered_json gram = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < inst.gram.dimension(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < inst.gram.dimension(); ++k) row.push_back(inst.gram(i, k).get_str());
    gram.push_back(row);
  }
  j["gram"] = gram;
  j["det"] = inst.gram.det().get_str();
  j["det_closed_form"] = inst.detClosedForm.get_str();
  j["lambda"] = an.min.lambdaMin.get_str();
  j["kissing"] = an.min.kissingNumber;
  j["span_rank"] = an.min.spanRank;
  j["theorem_wr"] = an.verdict.wellRounded;
  j["oracle_wr"] = an.min.wellRounded;
  j["agree"] = an.verdict.wellRounded == an.min.wellRounded;
  j["delta_sq_num"] = an.density.value.get_num().get_str();
  j["delta_sq_den"] = an.density.value.get_den().get_str();
  j["optimal"] = an.verdict.optimalDensity;
  j["enlarged_kissing"] = an.verdict.enlargedKissing;
  return j;
}

inline Format format_from(bool json, bool csv) {
  if (json && csv) throw Error(ErrorKind::InvalidInput, "--json and --csv are exclusive");
  return json ? Format::Json : csv ? Format::Csv : Format::Table;
}

inline int cmd_analyze(const std::string& text, Format fmt, const std::string& outPath,
                       const Hooks& hooks, std::ostream& out) {
  const IntPolynomial p = IntPolynomial::parse(text);
  const Analysis an = analyze(p, hooks);
  Sink sink(outPath, out);
  switch (fmt) {
    case Format::Table: print_analysis_table(sink.stream(), an); break;
    case Format::Json: sink.stream() << analysis_json(an).dump(2) << '\n'; break;
    case Format::Csv: write_csv(sink.stream(), {cross_check_instance(p, hooks.predicate)}); break;
  }
  return kSuccess;
}

inline int cmd_minvec(const std::string& text, Format fmt, const std::string& outPath,
                      std::ostream& out) {
  const IntPolynomial p = IntPolynomial::parse(text);
  const LatticeInstance inst = build(p);
  const MinResult m = shortest_vectors(inst.gram);
  Sink sink(outPath, out);
  std::ostream& o = sink.stream();
  switch (fmt) {
    case Format::Table:
      o << std::left << std::setw(22) << "coordinates" << std::setw(10) << "norm" << "embedding\n";
      for (const auto& v : m.minimalVectors) {
        std::string e;
        for (double x : embed(v, inst.genMatrix)) e += (e.empty() ? "" : ", ") + fmt6(x);
        o << std::left << std::setw(22) << coords(v) << std::setw(10)
          << form_value(inst.gram, v).get_str() << "(" << e << ")\n";
      }
      break;
    case Format::Json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& v : m.minimalVectors) {
        nlohmann::ordered_json j;
        j["coords"] = v.coords;
        j["norm"] = form_value(inst.gram, v).get_str();
        j["embedding"] = embed(v, inst.genMatrix);
        arr.push_back(j);
      }
      o << arr.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      o << "coords,norm\n";
      for (const auto& v : m.minimalVectors) {
        std::string c;
        for (std::size_t i = 0; i < v.size(); ++i) c += (i ? " " : "") + std::to_string(v[i]);
        o << c << ',' << form_value(inst.gram, v).get_str() << '\n';
      }
      break;
    }
  }
  return kSuccess;
}

struct SweepArgs {
  std::string family;
  std::vector<std::int64_t> a, b, c, p, gammaSq;
  std::int64_t boxMargin = 2;
  std::size_t samples = 100;
  std::size_t threads = 1;
};

inline SweepSpec spec_from(const SweepArgs& args) {
  const auto family = family_from_tag(args.family);
  if (!family) throw Error(ErrorKind::InvalidInput, "--family must be one of f2r|f2c|f3r|f4s");
  const auto range = [](const std::vector<std::int64_t>& v, const char* name) {
    if (v.size() != 2) throw Error(ErrorKind::InvalidInput, std::string("--") + name + " LO HI is required");
    return IntRange{v[0], v[1]};
  };
  SweepSpec spec;
  spec.family = *family;
  spec.aRange = range(args.a, "a");
  if (*family == Family::F4S) {
    spec.pRange = range(args.p, "p");
    if (args.gammaSq.empty()) throw Error(ErrorKind::InvalidInput, "--gamma-sq LIST is required");
    spec.gammaSq = args.gammaSq;
  } else {
    spec.bRange = range(args.b, "b");
    if (*family == Family::F3R) spec.cRange = range(args.c, "c");
  }
  spec.boxOverCover = args.boxMargin;
  spec.oracleSamples = args.samples;
  return spec;
}

inline int cmd_sweep(const SweepArgs& args, Format fmt, const std::string& outPath,
                     const Hooks& hooks, std::ostream& out, std::ostream& err) {
  const SweepReport report = run_sweep(spec_from(args), hooks.predicate, args.threads);
  Sink sink(outPath, out);
  if (fmt == Format::Json) {
    write_json(sink.stream(), report);
  } else {
    write_csv(sink.stream(), report);
  }
  std::ostream& summary = sink.to_file() ? out : err;
  summary << tag(report.spec.family) << ": " << report.totalPoints << " points, "
          << report.validPoints << " valid, " << report.agreements << " agreements, mismatches: "
          << report.mismatches.size() << ", structural failures: "
          << report.structuralFailures.size() << ", oracle checked: " << report.oracleChecked
          << " (" << report.oracleFailures.size() << " failures), " << report.wallTimeMillis
          << " ms\n";
  for (const auto& m : report.mismatches) {
    summary << "  mismatch (" << m.poly.tail_string() << "): theorem "
            << yes(m.theoremWR) << ", oracle " << yes(m.oracleWR) << ", lambda "
            << m.lambda.get_str() << ", branch " << to_string(m.branch) << '\n';
  }
  return report.passed() ? kSuccess : kVerificationFailed;
}

inline int cmd_verify(bool json, std::size_t threads, const Hooks& hooks, std::ostream& out) {
  const VerifySummary s = run_verification(hooks.predicate, threads);
  if (json) {
    out << to_json(s).dump(2) << '\n';
  } else {
    for (const auto& c : s.checks) {
      if (c.passed) continue;
      out << "FAIL " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    }
    out << s.headline() << " (" << s.wallTimeMillis << " ms)\n";
  }
  return s.passed() ? kSuccess : kVerificationFailed;
}

}  // namespace detail

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const Hooks& hooks = {}) {
  CLI::App app{"Well-rounded lattices from integer polynomials", "wrl"};
  app.require_subcommand(1);

  std::string coeffs, outPath;
  bool json = false, csv = false;
  detail::SweepArgs sweep;

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", outPath, "Write output to PATH");
    sub->add_flag("--json", json, "JSON output");
    sub->add_flag("--csv", csv, "CSV output");
  };

  auto* analyze = app.add_subcommand("analyze", "Full analysis of one polynomial");
  analyze->add_option("coefficients", coeffs, "a,b[,c[,d]]")->required()->allow_extra_args(false);
  add_output(analyze);

  auto* minvec = app.add_subcommand("minvec", "List the minimal vectors");
  minvec->add_option("coefficients", coeffs, "a,b[,c[,d]]")->required();
  add_output(minvec);

  auto* sw = app.add_subcommand("sweep", "Theorem vs oracle over a coefficient grid");
  sw->add_option("--family", sweep.family, "f2r|f2c|f3r|f4s")->required();
  sw->add_option("--a", sweep.a, "LO HI")->expected(2);
  sw->add_option("--b", sweep.b, "LO HI")->expected(2);
  sw->add_option("--c", sweep.c, "LO HI")->expected(2);
  sw->add_option("--p", sweep.p, "LO HI")->expected(2);
  sw->add_option("--gamma-sq", sweep.gammaSq, "comma-separated list")->delimiter(',');
  sw->add_option("--box-margin", sweep.boxMargin, "Extra oracle box margin");
  sw->add_option("--samples", sweep.samples, "Instances cross-checked against the box oracle");
  sw->add_option("--threads", sweep.threads, "Worker threads");
  add_output(sw);

  std::size_t verifyThreads = 1;
  auto* verify = app.add_subcommand("verify", "Run the default verification grids");
  verify->add_flag("--json", json, "JSON summary");
  verify->add_option("--threads", verifyThreads, "Worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*analyze) return detail::cmd_analyze(coeffs, detail::format_from(json, csv), outPath, hooks, out);
    if (*minvec) return detail::cmd_minvec(coeffs, detail::format_from(json, csv), outPath, out);
    if (*sw) return detail::cmd_sweep(sweep, detail::format_from(json, csv), outPath, hooks, out, err);
    if (*verify) return detail::cmd_verify(json, verifyThreads, hooks, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return detail::exit_code_for(e.kind());
  }
  return kUsage;
}

}  // namespace wrl::cli
