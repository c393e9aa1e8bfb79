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

#ifndef RATNEAR_CLASSIFY_H_
#define RATNEAR_CLASSIFY_H_

#include <optional>
#include <string>

#include "ratnear/approx_function.h"
#include "ratnear/config.h"
#include "ratnear/matrix.h"
#include "ratnear/scalar.h"
#include "ratnear/surd.h"

namespace ratnear {

// An exponent: an exact value or +infinity.
struct Exponent {
  Surd value;
  bool infinite = false;

  static Exponent of(const Scalar& s) { return {s.value(), false}; }
  static Exponent of(const Surd& s) { return {s, false}; }
  static Exponent inf() { return {Surd(), true}; }
  std::string to_string() const;
  double to_double() const;
};

struct SubspaceProfile {
  int d = 1;
  int m = 1;
  std::optional<Exponent> omega;              // omega(A)
  std::optional<Exponent> omega_log;          // omega'(A)
  std::optional<Exponent> omega_prime_block;  // omega(A')
  std::optional<Exponent> sigma;              // sigma(A)
  Scalar nu = Scalar(1);
  // Values within tolerance of a threshold are treated as undecided.
  Scalar tolerance = Scalar(0);
  std::string source = "asserted";

  int n() const { return d + m; }
};

enum class VerdictValue { kYes, kNo, kUndetermined };
const char* to_string(VerdictValue v);

struct Verdict {
  VerdictValue value = VerdictValue::kUndetermined;
  std::string reason;
  bool boundary = false;  // decided Undetermined by the tolerance band
};

Verdict classify_extremal(const SubspaceProfile& p);
Verdict classify_khintchine(const SubspaceProfile& p);
Verdict classify_strong_ktc(const SubspaceProfile& p);
Verdict classify_mult_line(const Exponent& omega_col, bool alpha_nonzero,
                           const Scalar& tolerance = Scalar(0));

// min{(1/d)(1 - m/max{n, omega}), (m sigma - d)/n}.
Surd sigma_upper_bound(const SubspaceProfile& p);
// max{1/n, omega/(n + (n-1) omega)}.
Surd sigma_lower_bound(const Exponent& omega, int n);

// Piecewise upper bound for the dimension of tau-approximable points on the
// subspace. Needs tau >= 1/n.
Surd dim_upper(const Surd& tau, const SubspaceProfile& p);

// Half-open range (lo, hi].
struct SRange {
  Surd lo;
  Surd hi;
  bool valid = false;  // hypothesis of the range holds
  std::string note;
  bool contains(const SRange& o) const;
};

struct JarnikRanges {
  SRange conv;
  SRange div;
  SRange strong;
};

Surd tau0(const Exponent& omega, int m);
JarnikRanges jarnik_s_ranges(const SubspaceProfile& p);

// sum psi(q)^{m+s} q^{d-s} for psi in the power-log family.
GuardedBool khintchine_sum_converges(const ApproxFunction& psi, int d, int m,
                                     const Scalar& s);
// sum psi(q) log q for psi in the power-log family.
GuardedBool mult_sum_converges(const ApproxFunction& psi);

// Profile from finite searches up to qmax (omega_tail estimators).
SubspaceProfile estimate_profile(const ParamMatrix& A, std::int64_t qmax,
                                 const Scalar& tolerance,
                                 const EnumConfig& cfg = {});

// "key: value" lines: d, m, omega, omega_log, omega_prime_block, sigma, nu,
// tolerance. Values use the scalar grammar or "inf".
SubspaceProfile parse_profile_text(const std::string& text);

}  // namespace ratnear

#endif  // RATNEAR_CLASSIFY_H_
