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

#include "ratnear/classify.h"

#include <limits>
#include <sstream>

#include "ratnear/errors.h"
#include "ratnear/exponents.h"

namespace ratnear {
namespace {

// -1, 0, +1 for x below, within tol of, above t. Infinity is above
// everything.
int cmp_tol(const Exponent& x, const Surd& t, const Surd& tol) {
  if (x.infinite) return 1;
  Surd diff = x.value - t;
  if (tol.is_zero()) return diff.sign();
  if (compare(diff.abs(), tol) <= 0) return 0;
  return diff.sign();
}

const Exponent& need(const std::optional<Exponent>& e, const char* what) {
  if (!e) throw PreconditionError(std::string("profile lacks ") + what);
  return *e;
}

Verdict make(VerdictValue v, std::string reason, bool boundary = false) {
  return {v, std::move(reason), boundary};
}

Surd min_surd(const Surd& a, const Surd& b) { return compare(a, b) <= 0 ? a : b; }
Surd max_surd(const Surd& a, const Surd& b) { return compare(a, b) >= 0 ? a : b; }

void require_power_log(const ApproxFunction& psi) {
  if (psi.family() != ApproxFunction::Family::kPowerLog) {
    throw PreconditionError("convergence tests need the power-log family");
  }
}

GuardedBool to_guarded(bool b) { return b ? GuardedBool::kTrue : GuardedBool::kFalse; }

Exponent from_estimate(const ExponentEstimate& e) {
  if (e.infinite) return Exponent::inf();
  return Exponent::of(Surd(Rational(e.omega_tail)));
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Exponent parse_exponent(const std::string& v) {
  if (v == "inf" || v == "+inf" || v == "infinity") return Exponent::inf();
  return Exponent::of(Scalar::parse(v));
}

}  // namespace

std::string Exponent::to_string() const {
  return infinite ? "inf" : value.to_string();
}

double Exponent::to_double() const {
  return infinite ? std::numeric_limits<double>::infinity() : value.to_double();
}

const char* to_string(VerdictValue v) {
  switch (v) {
    case VerdictValue::kYes: return "Yes";
    case VerdictValue::kNo: return "No";
    case VerdictValue::kUndetermined: return "Undetermined";
  }
  return "?";
}

Verdict classify_extremal(const SubspaceProfile& p) {
  const Exponent& w = need(p.omega, "omega");
  int c = cmp_tol(w, Surd(p.n()), p.tolerance.value());
  if (c == 0 && !p.tolerance.is_zero() && !(w.value == Surd(p.n()))) {
    return make(VerdictValue::kUndetermined, "omega within tolerance of n", true);
  }
  if (c <= 0) return make(VerdictValue::kYes, "extremal iff omega(A) <= n");
  return make(VerdictValue::kNo, "not extremal: omega(A) > n");
}

Verdict classify_khintchine(const SubspaceProfile& p) {
  const Exponent& w = need(p.omega, "omega");
  const Surd n(p.n());
  const Surd& tol = p.tolerance.value();
  int c = cmp_tol(w, n, tol);
  if (c < 0) return make(VerdictValue::kYes, "Khintchine type: omega(A) < n");
  if (c > 0) return make(VerdictValue::kNo, "not Khintchine type: omega(A) > n");
  if (!(w.value == n)) {
    return make(VerdictValue::kUndetermined, "omega within tolerance of n", true);
  }
  const Exponent& wl = need(p.omega_log, "omega_log");
  int lo = cmp_tol(wl, Surd(-1), tol);
  int hi = cmp_tol(wl, n, tol);
  if (lo < 0) {
    return make(VerdictValue::kYes,
                "omega(A) = n and omega'(A) < -1: Khintchine type for convergence");
  }
  if (hi > 0) {
    return make(VerdictValue::kNo, "omega(A) = n and omega'(A) > n: not Khintchine type");
  }
  bool boundary = (lo == 0 && !(wl.value == Surd(-1))) || (hi == 0 && !(wl.value == n));
  return make(VerdictValue::kUndetermined,
              "omega(A) = n and omega'(A) in [-1, n]: open case", boundary);
}

Verdict classify_strong_ktc(const SubspaceProfile& p) {
  const Exponent& w = need(p.omega_prime_block, "omega_prime_block");
  int c = cmp_tol(w, Surd(p.n()), p.tolerance.value());
  if (c < 0) {
    return make(VerdictValue::kYes, "strong Khintchine type for convergence: omega(A') < n");
  }
  bool boundary = c == 0 && !w.infinite && !(w.value == Surd(p.n()));
  return make(VerdictValue::kUndetermined, "omega(A') >= n: no converse known", boundary);
}

Verdict classify_mult_line(const Exponent& omega_col, bool alpha_nonzero,
                           const Scalar& tolerance) {
  int c = cmp_tol(omega_col, Surd(2), tolerance.value());
  if (c > 0) return make(VerdictValue::kNo, "omega(alpha;beta) > 2: not strongly extremal");
  if (c == 0) {
    bool boundary = !(omega_col.value == Surd(2));
    return make(VerdictValue::kUndetermined, "boundary case omega(alpha;beta) = 2",
                boundary);
  }
  if (!alpha_nonzero) {
    return make(VerdictValue::kUndetermined, "alpha = 0: criterion does not apply");
  }
  return make(VerdictValue::kYes,
              "omega(alpha;beta) < 2 and alpha != 0: multiplicatively Khintchine");
}

Surd sigma_upper_bound(const SubspaceProfile& p) {
  if (p.d < 1) throw PreconditionError("sigma_upper_bound needs d >= 1");
  const Exponent& w = need(p.omega, "omega");
  const Exponent& s = need(p.sigma, "sigma");
  const Surd n(p.n());
  Surd first = Surd(1) / Surd(p.d);
  if (w.infinite) {
    // m / max{n, inf} = 0
  } else {
    first = first * (Surd(1) - Surd(p.m) / max_surd(n, w.value));
  }
  if (s.infinite) return first;
  Surd second = (Surd(p.m) * s.value - Surd(p.d)) / n;
  return min_surd(first, second);
}

Surd sigma_lower_bound(const Exponent& omega, int n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  const Surd inv_n = Surd(Rational(1, n));
  if (omega.infinite) {
    if (n < 2) throw PreconditionError("infinite omega needs n >= 2");
    return max_surd(inv_n, Surd(Rational(1, n - 1)));
  }
  Surd t = omega.value / (Surd(n) + Surd(n - 1) * omega.value);
  return max_surd(inv_n, t);
}

Surd dim_upper(const Surd& tau, const SubspaceProfile& p) {
  const Exponent& w = need(p.omega, "omega");
  const Exponent& s = need(p.sigma, "sigma");
  const int d = p.d;
  const int m = p.m;
  const int n = p.n();
  if (compare(tau, Surd(Rational(1, n))) < 0) throw PreconditionError("tau must be >= 1/n");
  const Surd one(1);
  const Surd inv_w = w.infinite ? Surd(0) : one / w.value;
  if (compare(tau, inv_w) <= 0) {
    return Surd(n + 1) / (tau + one) - Surd(m);
  }
  const Surd dm = Surd(Rational(d + 1, m));
  if (s.infinite || compare(tau, inv_w + s.value - dm) <= 0) {
    if (w.infinite) return Surd(d + 1) / (tau + one);
    return (Surd(d + 1) * w.value - Surd(m)) / ((tau + one) * w.value);
  }
  if (compare(tau, s.value) <= 0) {
    return Surd(m) * (s.value - tau) / (tau + one);
  }
  return Surd(0);
}

bool SRange::contains(const SRange& o) const {
  return compare(lo, o.lo) <= 0 && compare(o.hi, hi) <= 0;
}

Surd tau0(const Exponent& omega, int m) {
  if (omega.infinite) return Surd(0);
  return Surd(1) / max_surd(Surd(m), omega.value);
}

JarnikRanges jarnik_s_ranges(const SubspaceProfile& p) {
  const Exponent& w = need(p.omega, "omega");
  const int d = p.d;
  const int m = p.m;
  const Surd n(p.n());
  const Surd one(1);
  JarnikRanges r;
  r.conv.hi = r.div.hi = r.strong.hi = Surd(d);
  const bool ok = !w.infinite && compare(w.value, n) < 0;
  if (ok) {
    r.conv.lo = (w.value * Surd(d + 1) - Surd(m)) / (w.value + one);
    Surd t0 = tau0(w, m);
    r.div.lo = (Surd(d + 1) - Surd(m) * t0) / (t0 + one);
    r.conv.valid = r.div.valid = true;
  } else {
    r.conv.lo = r.div.lo = Surd(d);
    r.conv.note = r.div.note = "empty: needs omega(A) < n";
  }
  if (p.omega_prime_block) {
    const Exponent& wb = *p.omega_prime_block;
    const Surd& nu = p.nu.value();
    if (nu.sign() <= 0 || compare(nu, one) > 0) throw PreconditionError("nu must lie in (0,1]");
    if (!wb.infinite && compare(wb.value, n / nu) < 0) {
      r.strong.lo = (wb.value * (Surd(d) + nu) - Surd(m)) / (wb.value + one);
      r.strong.valid = true;
    } else {
      r.strong.lo = Surd(d);
      r.strong.note = "empty: needs omega(A') < n/nu";
    }
  } else {
    r.strong.lo = Surd(d);
    r.strong.note = "empty: omega(A') not supplied";
  }
  return r;
}

GuardedBool khintchine_sum_converges(const ApproxFunction& psi, int d, int m,
                                     const Scalar& s) {
  require_power_log(psi);
  const Surd ms = Surd(m) + s.value();
  const Surd e = psi.b().value() * ms - (Surd(d) - s.value());
  int c = compare(e, Surd(1));
  if (c != 0) return to_guarded(c > 0);
  return to_guarded(compare(psi.b_log().value() * ms, Surd(1)) > 0);
}

GuardedBool mult_sum_converges(const ApproxFunction& psi) {
  require_power_log(psi);
  int c = compare(psi.b().value(), Surd(1));
  if (c != 0) return to_guarded(c > 0);
  return to_guarded(compare(psi.b_log().value(), Surd(2)) > 0);
}

SubspaceProfile estimate_profile(const ParamMatrix& A, std::int64_t qmax,
                                 const Scalar& tolerance, const EnumConfig& cfg) {
  SubspaceProfile p;
  p.d = A.d();
  p.m = A.m();
  p.tolerance = tolerance;
  p.source = "omega_tail estimates up to Q_max = " + std::to_string(qmax);
  ExponentEstimate w = estimate_omega(best_approx_records(A.full(), qmax, cfg));
  p.omega = from_estimate(w);
  if (!w.infinite) {
    try {
      p.omega_log = Exponent::of(
          Surd(Rational(estimate_omega_log(w.records, w.omega_tail, w.cutoff))));
    } catch (const InsufficientDataError&) {
    }
  }
  if (p.d >= 1) {
    try {
      p.omega_prime_block =
          from_estimate(estimate_omega(best_approx_records(A.block_matrix(), qmax, cfg)));
    } catch (const InsufficientDataError&) {
    }
  }
  try {
    p.sigma = from_estimate(estimate_sigma(A, qmax, 10, cfg));
  } catch (const InsufficientDataError&) {
  }
  return p;
}

SubspaceProfile parse_profile_text(const std::string& text) {
  SubspaceProfile p;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("profile line " + std::to_string(lineno) + ": expected key: value");
    }
    std::string key = trim(line.substr(0, colon));
    std::string val = trim(line.substr(colon + 1));
    if (key == "format") {
      continue;
    } else if (key == "d") {
      p.d = std::stoi(val);
    } else if (key == "m") {
      p.m = std::stoi(val);
    } else if (key == "omega") {
      p.omega = parse_exponent(val);
    } else if (key == "omega_log") {
      p.omega_log = parse_exponent(val);
    } else if (key == "omega_prime_block") {
      p.omega_prime_block = parse_exponent(val);
    } else if (key == "sigma") {
      p.sigma = parse_exponent(val);
    } else if (key == "nu") {
      p.nu = Scalar::parse(val);
    } else if (key == "tolerance") {
      p.tolerance = Scalar::parse(val);
    } else if (key == "source") {
      p.source = val;
    } else {
      throw ParseError("profile line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  if (p.d < 0 || p.m < 1) throw ParseError("profile needs d >= 0, m >= 1");
  return p;
}

}  // namespace ratnear
