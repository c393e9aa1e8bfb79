// Copyright 2026 The ratnear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ratnear/bounds.h"
#include "ratnear/classify.h"
#include "ratnear/counting.h"
#include "ratnear/covering.h"
#include "ratnear/errors.h"
#include "ratnear/exponents.h"
#include "ratnear/matrix.h"
#include "ratnear/real.h"
#include "ratnear/sieve.h"

namespace ratnear::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

// Splits on commas outside parentheses.
std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "pow2:a..b" or "range:a..b"; returns false when text has neither prefix.
bool parse_span(const std::string& text, const std::string& prefix, long* a, long* b) {
  if (text.rfind(prefix, 0) != 0) return false;
  std::string body = text.substr(prefix.size());
  auto dots = body.find("..");
  if (dots == std::string::npos) throw ParseError("expected " + prefix + "a..b");
  *a = std::stol(body.substr(0, dots));
  *b = std::stol(body.substr(dots + 2));
  return true;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  long a = 0;
  long b = 0;
  if (parse_span(text, "pow2:", &a, &b)) {
    for (long e = a; a <= b ? e <= b : e >= b; e += a <= b ? 1 : -1) {
      if (e < 0 || e > 40) throw ParseError("pow2 exponent out of range");
      out.push_back(std::int64_t{1} << e);
    }
    return out;
  }
  if (parse_span(text, "range:", &a, &b)) {
    for (long v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  for (const auto& tok : split_list(text)) out.push_back(std::stoll(tok));
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

std::vector<Scalar> parse_scalar_list(const std::string& text) {
  std::vector<Scalar> out;
  long a = 0;
  long b = 0;
  if (parse_span(text, "pow2:", &a, &b)) {
    for (long e = a; a <= b ? e <= b : e >= b; e += a <= b ? 1 : -1) {
      out.push_back(Scalar::parse("2^" + std::to_string(e)));
    }
    return out;
  }
  if (parse_span(text, "range:", &a, &b)) {
    for (long v = a; v <= b; ++v) out.push_back(Scalar(v));
    return out;
  }
  for (const auto& tok : split_list(text)) out.push_back(Scalar::parse(tok));
  return out;
}

std::string fmt_real(const Real& x) {
  return x.str(17, std::ios_base::scientific);
}

std::string fmt_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

// Converted reals carry long exact sources; those print as decimals.
std::string fmt_scalar(const Scalar& s) {
  if (s.source().size() <= 24) return s.source();
  return fmt_double(s.to_double());
}

std::string fmt_surd(const Surd& v) {
  std::string exact = v.to_string();
  return exact.size() <= 24 ? exact : fmt_double(v.to_double());
}

std::string fmt_exponent(const Exponent& e) {
  return e.infinite ? std::string("inf") : fmt_surd(e.value);
}

class Report {
 public:
  void section(const std::string& name) { text_ += fmt::format("[{}]\n", name); }
  void kv(const std::string& key, const std::string& value) {
    text_ += fmt::format("{}: {}\n", key, value);
  }
  template <typename T>
  void kv(const std::string& key, const T& value) {
    kv(key, fmt::format("{}", value));
  }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

class Csv {
 public:
  Csv(std::string columns_doc, std::vector<std::string> header)
      : text_("# " + columns_doc + "\n") {
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }
  void write(const std::string& path) const {
    if (!path.empty()) write_text_file(path, text_);
  }

 private:
  std::string text_;
};

struct Common {
  unsigned precision = 0;
  unsigned guard = 0;
  std::uint64_t budget = 1000000000;
  int workers = 1;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string csv_path;
};

struct Context {
  EnumConfig cfg;
  Report report;
  std::uint64_t seed = 1;
  std::string csv_path;
  int status = kExitOk;
};

void fail_if(Context& ctx, bool failed) {
  if (failed) ctx.status = kExitFailed;
}

// ---- count

struct CountOpts {
  std::string matrix;
  std::int64_t Q = 0;
  std::string delta;
  std::string theta;
  std::string mode = "N";
  std::string q = "0";
  std::string qset;
  std::string kappa = "0";
};

void run_count(const CountOpts& o, Context& ctx) {
  ParamMatrix A = read_param_matrix(o.matrix);
  Scalar delta = Scalar::parse(o.delta);
  std::vector<Scalar> theta = o.theta.empty() ? std::vector<Scalar>{}
                                              : parse_scalar_list(o.theta);
  Report& r = ctx.report;
  r.kv("label", A.label());
  r.kv("d", A.d());
  r.kv("m", A.m());
  r.kv("Q", o.Q);
  r.kv("delta", fmt_scalar(delta));
  r.kv("theta", o.theta.empty() ? "0" : o.theta);
  const bool want_csv = !ctx.csv_path.empty();
  auto hit_csv = [&](const CountResult& c) {
    if (!want_csv) return;
    std::vector<std::string> header{"q"};
    for (int i = 1; i <= A.d(); ++i) header.push_back(fmt::format("a_{}", i));
    for (int j = 1; j <= A.m(); ++j) header.push_back(fmt::format("residual_{}", j));
    Csv csv("certain hits: q, a, signed residual of each component", header);
    for (const auto& h : c.hits) {
      std::vector<std::string> row{std::to_string(h.q)};
      for (auto a : h.a) row.push_back(std::to_string(a));
      for (auto x : h.residual) row.push_back(fmt_double(x));
      csv.row(row);
    }
    csv.write(ctx.csv_path);
  };
  if (o.mode == "N") {
    CountResult c = count_N({A, o.Q, delta, theta}, ctx.cfg, want_csv);
    r.kv("count_certain", c.count_certain);
    r.kv("count_ambiguous", c.count_ambiguous);
    hit_csv(c);
  } else if (o.mode == "Nprime") {
    if (!o.qset.empty()) {
      std::vector<Scalar> qs = parse_scalar_list(o.qset);
      NprimeResult n = count_Nprime_over(A, qs, o.Q, delta, theta, ctx.cfg);
      r.kv("q_set", o.qset);
      r.kv("count_certain", n.count.count_certain);
      r.kv("count_ambiguous", n.count.count_ambiguous);
      r.kv("best_q", qs[n.best_index].source());
      r.kv("note", "maximum over a finite q set: a lower bound for the sup over real q");
    } else {
      Scalar q = Scalar::parse(o.q);
      CountResult c = count_Nprime_at(A, q, o.Q, delta, theta, ctx.cfg, want_csv);
      r.kv("q", q.source());
      r.kv("count_certain", c.count_certain);
      r.kv("count_ambiguous", c.count_ambiguous);
      hit_csv(c);
    }
  } else if (o.mode == "resonant") {
    Scalar kappa = Scalar::parse(o.kappa);
    ResonantSet rs = resonant_set(A, o.Q, delta, kappa, ctx.cfg);
    r.kv("kappa", kappa.source());
    r.kv("members", rs.size());
    r.kv("ambiguous", rs.ambiguous_size());
    if (want_csv) {
      std::vector<std::string> header{"q"};
      for (int i = 1; i <= A.d(); ++i) header.push_back(fmt::format("a_{}", i));
      Csv csv("resonant set members (q, a)", header);
      const std::size_t s = static_cast<std::size_t>(A.d() + 1);
      for (std::size_t k = 0; k < rs.size(); ++k) {
        std::vector<std::string> row;
        for (std::size_t i = 0; i < s; ++i) row.push_back(std::to_string(rs.members[k * s + i]));
        csv.row(row);
      }
      csv.write(ctx.csv_path);
    }
  } else {
    throw ParseError("unknown count mode: " + o.mode);
  }
}

// ---- exponent

struct ExponentOpts {
  std::string matrix;
  std::int64_t qmax = 1000;
  std::int64_t cutoff = 10;
  bool transpose = false;
  std::string kernel = "stop";
  std::string phi;
};

void run_exponent(const ExponentOpts& o, Context& ctx) {
  MatrixFile f = read_matrix_file(o.matrix);
  Matrix M = o.transpose ? f.matrix.transpose() : f.matrix;
  ZeroPolicy policy = o.kernel == "skip" ? ZeroPolicy::kSkipKernel : ZeroPolicy::kStop;
  if (o.kernel != "skip" && o.kernel != "stop") throw ParseError("--kernel is stop or skip");
  Report& r = ctx.report;
  r.kv("label", f.label);
  r.kv("rows", M.rows());
  r.kv("cols", M.cols());
  r.kv("transposed", o.transpose);
  RecordSearch rs = best_approx_records(M, o.qmax, ctx.cfg, policy);
  r.kv("Q_max", rs.Q_max);
  r.kv("records", rs.records.size());
  r.kv("exact_zero", rs.exact_zero);
  r.kv("kernel_skipped", rs.kernel_skipped);
  if (!ctx.csv_path.empty()) {
    Csv csv("best approximation records: |q|, q, ||A q^T||, log|q|, log(1/err)",
            {"norm_q", "q", "err", "log_norm_q", "log_inv_err"});
    for (const auto& rec : rs.records) {
      std::string q;
      for (std::size_t i = 0; i < rec.q.size(); ++i) {
        if (i) q += ' ';
        q += std::to_string(rec.q[i]);
      }
      double lq = std::log(static_cast<double>(rec.norm_q));
      double le = rec.exact_zero ? INFINITY : -std::log(rec.err_double);
      csv.row({std::to_string(rec.norm_q), q, fmt_double(rec.err_double), fmt_double(lq),
               fmt_double(le)});
    }
    csv.write(ctx.csv_path);
  }
  ExponentEstimate e = estimate_omega(rs, o.cutoff);
  r.kv("cutoff", o.cutoff);
  r.kv("infinite", e.infinite);
  r.kv("omega_sup", fmt_double(e.omega_sup));
  r.kv("omega_slope", fmt_double(e.omega_slope));
  r.kv("omega_tail", fmt_double(e.omega_tail));
  r.kv("records_used", e.records_used);
  if (!e.infinite) {
    r.kv("omega_log", fmt_double(estimate_omega_log(e.records, e.omega_tail, o.cutoff)));
  }
  r.kv("claim", fmt::format("consistent with the estimates up to Q_max = {}", rs.Q_max));
  if (!o.phi.empty()) {
    ApproxFunction phi = ApproxFunction::parse(o.phi);
    C0Certificate c = badly_approx_constant(M, phi, o.qmax, ctx.cfg, policy);
    r.kv("phi", phi.describe());
    r.kv("c0", fmt_real(c.c0));
    r.kv("c0_capped", c.capped);
    r.kv("c0_argmin_norm", c.argmin_norm);
    r.kv("c0_range", c.Q_max);
  }
}

// ---- sieve-check

struct SieveOpts {
  std::string mode = "ls";
  int instances = 500;
  std::string deltas = "1/2,1/4,1/10,1/100";
  std::int64_t grid = 100000;
  std::string matrix;
  std::int64_t J = 10;
  bool unimodular = false;
  int max_k = 3;
  int max_R = 50;
  int max_L = 20;
};

void run_sieve(const SieveOpts& o, Context& ctx) {
  Report& r = ctx.report;
  r.kv("mode", o.mode);
  if (o.mode == "fejer") {
    if (o.grid < 1) throw PreconditionError("--grid must be >= 1");
    std::vector<Rational> grid;
    for (std::int64_t j = 0; j < o.grid; ++j) grid.emplace_back(j, o.grid);
    Csv csv("Fejer majorant scan over theta = j/grid",
            {"delta", "J", "grid_points", "in_window", "violations", "ambiguous",
             "min_majorant"});
    std::uint64_t total_viol = 0;
    for (const auto& d : parse_scalar_list(o.deltas)) {
      FejerReport f = check_fejer_majorant(grid, d);
      total_viol += f.violations.size();
      csv.row({d.source(), std::to_string(f.J), std::to_string(f.grid_points),
               std::to_string(f.in_window), std::to_string(f.violations.size()),
               std::to_string(f.ambiguous), fmt_real(f.min_majorant)});
      r.kv(fmt::format("delta {}", d.source()),
           fmt::format("J={} in_window={} violations={} ambiguous={}", f.J, f.in_window,
                       f.violations.size(), f.ambiguous));
    }
    r.kv("violations", total_viol);
    fail_if(ctx, total_viol > 0);
    csv.write(ctx.csv_path);
    return;
  }
  if (o.mode == "separation") {
    Matrix M = read_matrix_file(o.matrix).matrix;
    SeparationResult s = separation_of_sieve_points(M, o.J, ctx.cfg);
    r.kv("J", o.J);
    r.kv("infinite", s.infinite);
    r.kv("exact_zero", s.exact_zero);
    if (!s.infinite) {
      r.kv("separation", s.value.value().to_string());
      r.kv("separation_approx", fmt_double(s.value.to_double()));
      std::string k;
      for (auto v : s.k) k += (k.empty() ? "" : " ") + std::to_string(v);
      r.kv("difference", k);
    }
    return;
  }
  const bool dual = o.mode == "dual-ls";
  if (!dual && o.mode != "ls") throw ParseError("unknown sieve mode: " + o.mode);
  r.kv("seed", ctx.seed);
  r.kv("instances", o.instances);
  const std::size_t N = static_cast<std::size_t>(std::max(0, o.instances));
  std::vector<SieveCheck> checks(N);
  std::vector<SieveInstance> insts(N);
  const int workers = std::max(1, ctx.cfg.workers);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < N;
             i += static_cast<std::size_t>(workers)) {
          std::uint64_t seed = ctx.seed + i;
          SieveInstance inst = random_sieve_instance(seed, o.max_k, o.max_R, o.max_L);
          if (dual && o.unimodular) inst = with_unimodular_point_coeffs(inst, seed);
          checks[i] = dual ? dual_sieve_check(inst) : large_sieve_check(inst);
          insts[i] = std::move(inst);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Csv csv("one row per random instance; verdict is the guarded lhs <= rhs",
          {"instance", "seed", "k", "R", "box_size", "lhs", "rhs", "ratio", "verdict"});
  std::uint64_t viol = 0;
  std::uint64_t amb = 0;
  Real worst = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const auto& c = checks[i];
    if (c.holds == GuardedBool::kFalse) ++viol;
    if (c.holds == GuardedBool::kAmbiguous) ++amb;
    if (c.ratio > worst) worst = c.ratio;
    csv.row({std::to_string(i), std::to_string(ctx.seed + i), std::to_string(insts[i].k),
             std::to_string(insts[i].points.size()), std::to_string(insts[i].box_size()),
             fmt_real(c.lhs), fmt_real(c.rhs), fmt_real(c.ratio), to_string(c.holds)});
  }
  r.kv("violations", viol);
  r.kv("ambiguous", amb);
  r.kv("max_ratio", fmt_real(worst));
  fail_if(ctx, viol > 0);
  csv.write(ctx.csv_path);
}

// ---- verify-bounds

struct BoundsOpts {
  std::string matrix;
  std::string kind = "phi-a";
  std::string qgrid = "pow2:4..12";
  std::string dgrid = "pow2:-1..-10";
  std::string eps = "0.1";
  std::int64_t c0_qmax = 0;
  std::string phi = "power-log:1,1";
  std::string exponent;
  std::int64_t exponent_qmax = 10000;
  std::string theta;
};

void run_bounds(const BoundsOpts& o, Context& ctx) {
  ParamMatrix A = read_param_matrix(o.matrix);
  BoundOptions opt;
  opt.kind = parse_bound_kind(o.kind);
  opt.phi = ApproxFunction::parse(o.phi);
  opt.eps = Scalar::parse(o.eps);
  if (!o.exponent.empty()) opt.exponent = Scalar::parse(o.exponent).to_double();
  opt.exponent_qmax = o.exponent_qmax;
  opt.c0_qmax = o.c0_qmax;
  std::vector<std::int64_t> Qs = parse_int_list(o.qgrid);
  std::vector<Scalar> deltas = parse_scalar_list(o.dgrid);
  std::vector<Scalar> theta = o.theta.empty() ? std::vector<Scalar>{}
                                              : parse_scalar_list(o.theta);
  GridVerification g = verify_grid(A, opt, Qs, deltas, theta, ctx.cfg);
  Report& r = ctx.report;
  r.kv("label", A.label());
  r.kv("kind", to_string(opt.kind));
  r.kv("cells", g.cells.size());
  if (opt.kind != BoundKind::kAsympRatio) {
    r.kv("c0", fmt_real(g.certificate.c0));
    r.kv("c0_range", g.certificate.Q_max);
    r.kv("c0_phi", g.certificate.phi.describe());
    r.kv("c0_kernel_skipped", g.certificate.kernel_skipped);
  }
  r.kv("exponent", fmt_double(g.exponent));
  if (opt.kind == BoundKind::kOmegaA1) r.kv("Q0", fmt_real(g.q0));
  if (!g.cells.empty()) r.kv("clause", g.cells.front().clause);
  r.kv("violations", g.violations);
  r.kv("ambiguous", g.ambiguous);
  r.kv("not_applicable", g.not_applicable);
  fail_if(ctx, g.violations > 0);
  Csv csv("one row per grid cell; measured_hi = certain + ambiguous",
          {"Q", "delta", "measured_lo", "measured_hi", "bound", "ratio", "pass",
           "applicable", "required_range", "kernel_multiplicity", "bounded_regime",
           "exact_points"});
  for (const auto& c : g.cells) {
    csv.row({std::to_string(c.Q), fmt_scalar(c.delta), std::to_string(c.measured.count_certain),
             std::to_string(c.upper()), fmt_real(c.bound_value), fmt_real(c.ratio),
             to_string(c.pass), c.applicable ? "1" : "0", std::to_string(c.required_range),
             std::to_string(c.kernel_multiplicity), c.bounded_regime ? "1" : "0",
             std::to_string(c.exact_points)});
  }
  csv.write(ctx.csv_path);
}

// ---- covering

struct CoveringOpts {
  std::string mode = "coverage";
  std::string matrix;
  std::string Qs = "100";
  std::string delta = "1";
  std::string kappa = "proof";
  std::string sampler = "exact";
  std::string radius = "ubiquity";
  std::string ball;
  std::string x;
  int instances = 0;
};

// "Q^e" gives delta = Q^e at the working precision.
Scalar delta_for(const std::string& rule, std::int64_t Q) {
  if (rule.rfind("Q^", 0) == 0) {
    Real e = to_real(Scalar::parse(rule.substr(2)));
    return to_scalar(boost::multiprecision::pow(Real(Q), e));
  }
  return Scalar::parse(rule);
}

Sampler parse_sampler(const std::string& text, std::uint64_t seed) {
  Sampler s;
  s.seed = seed;
  if (text == "exact") {
    s.kind = Sampler::Kind::kExact;
  } else if (text.rfind("grid:", 0) == 0) {
    s.kind = Sampler::Kind::kGrid;
    s.resolution = std::stoll(text.substr(5));
  } else if (text.rfind("mc:", 0) == 0) {
    s.kind = Sampler::Kind::kMonteCarlo;
    s.samples = std::stoll(text.substr(3));
  } else {
    throw ParseError("sampler is exact, grid:N or mc:N");
  }
  return s;
}

void run_covering(const CoveringOpts& o, Context& ctx) {
  ParamMatrix A = read_param_matrix(o.matrix);
  Report& r = ctx.report;
  r.kv("label", A.label());
  r.kv("mode", o.mode);
  std::vector<std::int64_t> Qs = parse_int_list(o.Qs);
  if (o.mode == "witness") {
    std::vector<Scalar> x = parse_scalar_list(o.x);
    const std::int64_t Q = Qs.front();
    Scalar delta = delta_for(o.delta, Q);
    std::optional<Witness> w = minkowski_witness(A, x, Q, delta);
    r.kv("Q", Q);
    r.kv("delta", fmt_scalar(delta));
    r.kv("found", w.has_value());
    if (!w) {
      fail_if(ctx, true);
      return;
    }
    std::string a;
    std::string b;
    for (auto v : w->a) a += (a.empty() ? "" : " ") + std::to_string(v);
    for (auto v : w->b) b += (b.empty() ? "" : " ") + std::to_string(v);
    r.kv("q", w->q);
    r.kv("a", a);
    r.kv("b", b);
    GuardedBool v = verify_witness(A, x, Q, delta, *w, ctx.cfg);
    r.kv("verified", to_string(v));
    fail_if(ctx, v == GuardedBool::kFalse);
    return;
  }
  if (o.mode != "coverage") throw ParseError("covering mode is witness or coverage");
  Ball ball;
  if (o.ball.empty()) {
    ball.center.assign(static_cast<std::size_t>(A.d()), 0.5);
    ball.radius = 0.5;
  } else {
    std::vector<Scalar> v = parse_scalar_list(o.ball);
    if (static_cast<int>(v.size()) != A.d() + 1) {
      throw ParseError("--ball takes d center coordinates and a radius");
    }
    for (int i = 0; i < A.d(); ++i) ball.center.push_back(v[i].to_double());
    ball.radius = v.back().to_double();
  }
  RadiusMode mode = o.radius == "minkowski" ? RadiusMode::kMinkowski : RadiusMode::kUbiquity;
  if (o.radius != "minkowski" && o.radius != "ubiquity") {
    throw ParseError("--radius is ubiquity or minkowski");
  }
  Scalar kappa = o.kappa == "proof"
                     ? to_scalar(proof_kappa(A.d(), A.m(), Real(ball.measure())))
                     : Scalar::parse(o.kappa);
  Sampler sampler = parse_sampler(o.sampler, ctx.seed);
  r.kv("kappa", fmt_double(kappa.to_double()));
  r.kv("kappa_rule", o.kappa);
  r.kv("radius_mode", o.radius);
  r.kv("sampler", o.sampler);
  Csv csv("coverage fraction per Q", {"Q", "delta", "fraction", "std_error", "ball_count",
                                      "ambiguous_balls", "radius"});
  std::optional<std::int64_t> onset;
  double last = 0;
  for (auto Q : Qs) {
    Scalar delta = delta_for(o.delta, Q);
    CoverageResult c = ubiquity_coverage(A, Q, delta, kappa, ball, sampler, mode, ctx.cfg);
    csv.row({std::to_string(Q), fmt_double(delta.to_double()), fmt_double(c.fraction),
             fmt_double(c.std_error), std::to_string(c.ball_count),
             std::to_string(c.ambiguous_balls), fmt_double(c.radius)});
    r.kv(fmt::format("Q {}", Q),
         fmt::format("fraction={} balls={} radius={}{}", fmt_double(c.fraction), c.ball_count,
                     fmt_double(c.radius), c.empty ? " empty" : ""));
    if (c.fraction >= 0.5 && !onset) onset = Q;
    if (c.fraction < 0.5) onset.reset();
    last = c.fraction;
  }
  r.kv("fraction_at_top", fmt_double(last));
  r.kv("onset_Q", onset ? std::to_string(*onset) : std::string("none"));
  csv.write(ctx.csv_path);
}

// ---- classify

struct ClassifyOpts {
  std::string profile;
  std::string matrix;
  std::int64_t qmax = 10000;
  std::string tolerance = "0.05";
  std::string tau;
};

void emit_verdict(Report& r, const std::string& name, const Verdict& v) {
  r.kv(name, fmt::format("{} | {}{}", to_string(v.value), v.reason,
                         v.boundary ? " | boundary" : ""));
}

void run_classify(const ClassifyOpts& o, Context& ctx) {
  SubspaceProfile p;
  if (!o.profile.empty()) {
    std::ifstream in(o.profile);
    if (!in) throw Error("cannot open profile: " + o.profile);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    p = parse_profile_text(text);
  } else if (!o.matrix.empty()) {
    p = estimate_profile(read_param_matrix(o.matrix), o.qmax, Scalar::parse(o.tolerance),
                         ctx.cfg);
  } else {
    throw ParseError("classify needs --profile or --matrix");
  }
  Report& r = ctx.report;
  auto show = [](const std::optional<Exponent>& e) {
    return e ? fmt_exponent(*e) : std::string("absent");
  };
  r.kv("source", p.source);
  r.kv("d", p.d);
  r.kv("m", p.m);
  r.kv("omega", show(p.omega));
  r.kv("omega_log", show(p.omega_log));
  r.kv("omega_prime_block", show(p.omega_prime_block));
  r.kv("sigma", show(p.sigma));
  r.kv("tolerance", p.tolerance.source());
  r.section("verdicts");
  if (p.omega) {
    emit_verdict(r, "extremal", classify_extremal(p));
    try {
      emit_verdict(r, "khintchine", classify_khintchine(p));
    } catch (const PreconditionError& e) {
      r.kv("khintchine", fmt::format("Undetermined | {}", e.what()));
    }
    r.kv("sigma_lower_bound", fmt_surd(sigma_lower_bound(*p.omega, p.n())));
    if (p.sigma && p.d >= 1) {
      r.kv("sigma_upper_bound", fmt_surd(sigma_upper_bound(p)));
    }
    JarnikRanges j = jarnik_s_ranges(p);
    auto range = [](const SRange& s) {
      return s.valid ? fmt::format("({}, {}]", fmt_surd(s.lo), fmt_surd(s.hi)) : s.note;
    };
    r.kv("s_range_conv", range(j.conv));
    r.kv("s_range_div", range(j.div));
    r.kv("s_range_strong", range(j.strong));
    if (!o.tau.empty() && p.sigma) {
      Scalar tau = Scalar::parse(o.tau);
      r.kv(fmt::format("dim_upper({})", tau.source()), fmt_surd(dim_upper(tau.value(), p)));
    }
  }
  if (p.omega_prime_block) emit_verdict(r, "strong_khintchine", classify_strong_ktc(p));
}

// ---- mult-line

struct MultLineOpts {
  std::string alpha;
  std::string beta;
  std::string x;
  std::int64_t Q = 100000;
  std::int64_t qmax = 0;
};

void run_mult_line(const MultLineOpts& o, Context& ctx) {
  Scalar alpha = Scalar::parse(o.alpha);
  Scalar beta = Scalar::parse(o.beta);
  Scalar x = Scalar::parse(o.x);
  std::vector<MultRecord> recs = mult_min_on_line(alpha, beta, x, o.Q, ctx.cfg);
  Report& r = ctx.report;
  r.kv("alpha", alpha.source());
  r.kv("beta", beta.source());
  r.kv("x", x.source());
  r.kv("Q", o.Q);
  r.kv("records", recs.size());
  if (!recs.empty()) {
    r.kv("last_q", recs.back().q);
    r.kv("last_value", fmt_double(recs.back().value));
    r.kv("exact_zero", recs.back().exact_zero);
  }
  Csv csv("running minimum records of q (log q)^2 ||q x|| ||q y||",
          {"q", "value", "exact_zero"});
  for (const auto& m : recs) {
    csv.row({std::to_string(m.q), fmt_double(m.value), m.exact_zero ? "1" : "0"});
  }
  csv.write(ctx.csv_path);
  if (o.qmax > 0) {
    Matrix col = column_matrix({alpha, beta});
    ExponentEstimate e = estimate_omega(best_approx_records(col, o.qmax, ctx.cfg));
    Exponent w = e.infinite ? Exponent::inf()
                            : Exponent::of(Surd(Rational(e.omega_tail)));
    r.kv("omega_col", fmt_exponent(w));
    emit_verdict(r, "multiplicative", classify_mult_line(w, !alpha.is_zero()));
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ratnear: rational points near affine subspaces"};
  app.set_config("--config", "", "INI/TOML file with default flag values");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.fallthrough();
  Common common;
  app.add_option("--precision", common.precision,
                 "working precision in bits (default: RATNEAR_PRECISION or 192)");
  app.add_option("--guard", common.guard, "guard band exponent in bits (default: precision/2)");
  app.add_option("--budget", common.budget, "enumeration budget in candidate points");
  app.add_option("--workers", common.workers, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--seed", common.seed, "random seed");
  app.add_option("--out", common.out_path, "report file (default: stdout)");
  app.add_option("--csv", common.csv_path, "CSV side file");

  CountOpts count;
  auto* c = app.add_subcommand("count", "count rational points near the subspace");
  c->add_option("--matrix", count.matrix, "parametrizing matrix file")->required();
  c->add_option("--Q", count.Q, "box size")->required();
  c->add_option("--delta", count.delta, "distance threshold")->required();
  c->add_option("--theta", count.theta, "inhomogeneous shift, comma separated");
  c->add_option("--mode", count.mode, "N, Nprime or resonant")
      ->check(CLI::IsMember({"N", "Nprime", "resonant"}));
  c->add_option("--q", count.q, "real q for Nprime");
  c->add_option("--qset", count.qset, "candidate q list for Nprime (list or range:a..b)");
  c->add_option("--kappa", count.kappa, "kappa for the resonant set");

  ExponentOpts expo;
  auto* e = app.add_subcommand("exponent", "best approximation records and exponents");
  e->add_option("--matrix", expo.matrix, "matrix file")->required();
  e->add_option("--qmax", expo.qmax, "search bound on |q|");
  e->add_option("--cutoff", expo.cutoff, "smallest |q| used by the estimators");
  e->add_flag("--transpose", expo.transpose, "use the transpose (sigma)");
  e->add_option("--kernel", expo.kernel, "stop or skip at exact zeros")
      ->check(CLI::IsMember({"stop", "skip"}));
  e->add_option("--phi", expo.phi, "also certify c0 for this approximation function");

  SieveOpts sieve;
  auto* s = app.add_subcommand("sieve-check", "Fejer majorant and large sieve checks");
  s->add_option("--mode", sieve.mode, "fejer, ls, dual-ls or separation")
      ->check(CLI::IsMember({"fejer", "ls", "dual-ls", "separation"}));
  s->add_option("--instances", sieve.instances, "random instances");
  s->add_option("--deltas", sieve.deltas, "deltas for the Fejer scan");
  s->add_option("--grid", sieve.grid, "Fejer grid size");
  s->add_option("--matrix", sieve.matrix, "matrix for separation mode");
  s->add_option("--J", sieve.J, "J for separation mode");
  s->add_flag("--unimodular", sieve.unimodular, "unimodular point coefficients (dual-ls)");
  s->add_option("--max-k", sieve.max_k, "largest dimension");
  s->add_option("--max-R", sieve.max_R, "largest number of points");
  s->add_option("--max-L", sieve.max_L, "largest box side");

  BoundsOpts bounds;
  auto* b = app.add_subcommand("verify-bounds", "measured counts against upper bounds");
  b->add_option("--matrix", bounds.matrix, "parametrizing matrix file")->required();
  b->add_option("--kind", bounds.kind, "phi-a, phi-b, omega-a1, omega-a2, dual, asymp-ratio")
      ->check(CLI::IsMember({"phi-a", "phi-b", "omega-a1", "omega-a2", "dual", "asymp-ratio"}));
  b->add_option("--qgrid", bounds.qgrid, "Q values (list or pow2:a..b)");
  b->add_option("--dgrid", bounds.dgrid, "delta values (list or pow2:a..b)");
  b->add_option("--eps", bounds.eps, "epsilon of the relaxed bounds");
  b->add_option("--c0-qmax", bounds.c0_qmax, "certificate range (0: smallest sufficient)");
  b->add_option("--phi", bounds.phi, "shape of phi for the phi kinds");
  b->add_option("--exponent", bounds.exponent, "omega (omega kinds) or sigma (dual)");
  b->add_option("--exponent-qmax", bounds.exponent_qmax, "search bound when estimating it");
  b->add_option("--theta", bounds.theta, "inhomogeneous shift");

  CoveringOpts cov;
  auto* v = app.add_subcommand("covering", "Minkowski witnesses and ubiquity coverage");
  v->add_option("--mode", cov.mode, "witness or coverage")
      ->check(CLI::IsMember({"witness", "coverage"}));
  v->add_option("--matrix", cov.matrix, "parametrizing matrix file")->required();
  v->add_option("--Q", cov.Qs, "Q or a Q sweep (list or pow2:a..b)");
  v->add_option("--delta", cov.delta, "delta, or Q^e for delta = Q^e");
  v->add_option("--kappa", cov.kappa, "kappa value or 'proof'");
  v->add_option("--sampler", cov.sampler, "exact, grid:N or mc:N");
  v->add_option("--radius", cov.radius, "ubiquity or minkowski");
  v->add_option("--ball", cov.ball, "center coordinates and radius, comma separated");
  v->add_option("--x", cov.x, "point for witness mode");

  ClassifyOpts cls;
  auto* k = app.add_subcommand("classify", "classification verdicts and formulas");
  k->add_option("--profile", cls.profile, "profile file");
  k->add_option("--matrix", cls.matrix, "matrix file to estimate a profile from");
  k->add_option("--qmax", cls.qmax, "search bound for estimates");
  k->add_option("--tolerance", cls.tolerance, "boundary tolerance for estimates");
  k->add_option("--tau", cls.tau, "evaluate the dimension bound at tau");

  MultLineOpts ml;
  auto* l = app.add_subcommand("mult-line", "multiplicative running minimum on a line");
  l->add_option("--alpha", ml.alpha, "slope")->required();
  l->add_option("--beta", ml.beta, "intercept")->required();
  l->add_option("--x", ml.x, "point on the line")->required();
  l->add_option("--Q", ml.Q, "largest q");
  l->add_option("--qmax", ml.qmax, "estimate omega of (alpha; beta) up to this bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << ex.what() << "\n" << app.help();
    return kExitUsage;
  }

  Context ctx;
  ctx.seed = common.seed;
  ctx.csv_path = common.csv_path;
  ctx.cfg.budget = common.budget;
  ctx.cfg.workers = common.workers;
  if (common.precision) {
    if (common.precision < 64 || common.precision > 4096) {
      err << "error: --precision must lie in [64, 4096]\n";
      return kExitUsage;
    }
    ctx.cfg.precision.bits = common.precision;
    ctx.cfg.precision.guard_bits = common.precision / 2;
  }
  if (common.guard) ctx.cfg.precision.guard_bits = common.guard;
  set_working_precision(ctx.cfg.precision.bits);

  CLI::App* sub = app.get_subcommands().front();
  ctx.report.kv("format_version", kFormatVersion);
  ctx.report.section("config");
  ctx.report.kv("subcommand", sub->get_name());
  ctx.report.kv("precision_bits", ctx.cfg.precision.bits);
  ctx.report.kv("guard_bits", ctx.cfg.precision.guard_bits);
  ctx.report.kv("budget", ctx.cfg.budget);
  ctx.report.kv("workers", ctx.cfg.workers);
  ctx.report.kv("seed", ctx.seed);
  ctx.report.kv("csv", ctx.csv_path.empty() ? "none" : ctx.csv_path);
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
    } else {
      value = opt->get_default_str();
    }
    ctx.report.kv(sub->get_name() + "." + name, value.empty() ? "-" : value);
  }
  ctx.report.section("result");

  const auto start = std::chrono::steady_clock::now();
  try {
    if (sub == c) run_count(count, ctx);
    if (sub == e) run_exponent(expo, ctx);
    if (sub == s) run_sieve(sieve, ctx);
    if (sub == b) run_bounds(bounds, ctx);
    if (sub == v) run_covering(cov, ctx);
    if (sub == k) run_classify(cls, ctx);
    if (sub == l) run_mult_line(ml, ctx);
  } catch (const ResourceLimitError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitBudget;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    err << "error: bad number: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& ex) {
    err << "error: number out of range: " << ex.what() << "\n";
    return kExitUsage;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ctx.report.kv("status", ctx.status == kExitOk ? "ok" : "verification-failure");
  ctx.report.kv("elapsed_s", fmt::format("{:.3f}", elapsed));
  if (common.out_path.empty()) {
    out << ctx.report.text();
  } else {
    write_text_file(common.out_path, ctx.report.text());
  }
  return ctx.status;
}

}  // namespace ratnear::cli
