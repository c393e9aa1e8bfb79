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

// Brute-force reference implementations used by the tests. They share the
// exact Surd arithmetic with the library but none of its enumeration code:
// screening is done in binary128 and only near-threshold cases fall back to
// exact evaluation.

#ifndef RATNEAR_TESTS_SUPPORT_ORACLES_H_
#define RATNEAR_TESTS_SUPPORT_ORACLES_H_

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ratnear/matrix.h"
#include "ratnear/scalar.h"
#include "ratnear/sieve.h"

namespace oracle {

using ratnear::ParamMatrix;
using ratnear::Rational;
using ratnear::Scalar;
using ratnear::Surd;

struct Count {
  std::uint64_t certain = 0;
  std::uint64_t ambiguous = 0;
  friend bool operator==(const Count& a, const Count& b) {
    return a.certain == b.certain && a.ambiguous == b.ambiguous;
  }
};

// Guarded verdict of ||x|| < delta for one exact component value.
enum class Verdict { kTrue, kFalse, kAmbiguous };

// Decides every component of the vector and combines them: any False gives
// False, otherwise any Ambiguous gives Ambiguous.
class ComponentTest {
 public:
  ComponentTest(const Scalar& delta, const Rational& guard);
  // value is a binary128 approximation of exact, accurate to ~1e-28.
  Verdict decide(__float128 value, const Surd& exact) const;
  // Same, building the exact value only when needed.
  template <class Exact>
  Verdict decide_lazy(__float128 value, Exact&& exact) const {
    Verdict v;
    if (screen(value, &v)) return v;
    return decide_exact(exact());
  }

 private:
  bool screen(__float128 value, Verdict* v) const;
  Verdict decide_exact(const Surd& x) const;
  Surd delta_;
  Surd guard_;
  __float128 lo_;
  __float128 hi_;
};

__float128 to_f128(const Surd& x);
__float128 to_f128(const Rational& x);

// N_A(Q, delta, theta) by a plain loop over the box.
Count count_N(const ParamMatrix& A, std::int64_t Q, const Scalar& delta,
              const std::vector<Scalar>& theta, const Rational& guard);

// Inner count of N'_A at real q.
Count count_Nprime_at(const ParamMatrix& A, const Scalar& q, std::int64_t Q,
                      const Scalar& delta, const std::vector<Scalar>& theta,
                      const Rational& guard);

// Resonant pairs (q, a) as flat vectors, certain and ambiguous.
struct Resonant {
  std::vector<std::vector<std::int64_t>> members;
  std::vector<std::vector<std::int64_t>> ambiguous;
};
Resonant resonant_set(const ParamMatrix& A, std::int64_t Q, const Scalar& delta,
                      const Scalar& kappa, const Rational& guard);

std::uint64_t exact_rational_points(const ParamMatrix& A, std::int64_t Q,
                                    const std::vector<Scalar>& theta);

// Record q's and norms of min ||A q^T|| over growing sup-norm shells.
struct Record {
  std::vector<std::int64_t> q;
  std::int64_t norm = 0;
  long double err = 0;
};
std::vector<Record> approx_records(const ratnear::Matrix& A, std::int64_t Q_max);

// Convergent denominators of a quadratic irrational up to bound.
std::vector<std::int64_t> convergent_denominators(const Surd& x, std::int64_t bound);

// min over 1 <= q <= Q of ||q x|| * q / c (phi(t) = c / t), capped at 1.
long double c0_scan(const Surd& x, long double c, std::int64_t Q);

// Direct sums of both large sieve forms in long double.
long double large_sieve_lhs(const ratnear::SieveInstance& inst);
long double dual_sieve_lhs(const ratnear::SieveInstance& inst);
long double sieve_rhs_factor(const ratnear::SieveInstance& inst);

struct MultRecord {
  std::int64_t q = 0;
  long double value = 0;
  bool zero = false;
};
std::vector<MultRecord> mult_min_on_line(const Surd& alpha, const Surd& beta,
                                         const Surd& x, std::int64_t Q);

// Random test data.
Scalar random_entry(std::mt19937_64& g);
Scalar random_shift(std::mt19937_64& g);
Scalar random_delta(std::mt19937_64& g);
ParamMatrix random_matrix(std::mt19937_64& g, int d, int m);

}  // namespace oracle

#endif  // RATNEAR_TESTS_SUPPORT_ORACLES_H_
