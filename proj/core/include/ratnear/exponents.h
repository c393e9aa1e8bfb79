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

#ifndef RATNEAR_EXPONENTS_H_
#define RATNEAR_EXPONENTS_H_

#include <cstdint>
#include <vector>

#include "ratnear/approx_function.h"
#include "ratnear/config.h"
#include "ratnear/matrix.h"
#include "ratnear/real.h"
#include "ratnear/scalar.h"

namespace ratnear {

struct ApproxRecord {
  std::vector<std::int64_t> q;  // nonzero, first nonzero entry positive
  std::int64_t norm_q = 0;
  Scalar err;                   // ||A q^T||, exact
  double err_double = 0;
  bool exact_zero = false;
};

// What to do with nonzero q where ||A q^T|| = 0 exactly.
enum class ZeroPolicy {
  kStop,        // record the zero; records end there (rational dependence)
  kSkipKernel,  // leave such q out of the search and count them
};

struct RecordSearch {
  std::vector<ApproxRecord> records;
  std::int64_t Q_max = 0;
  bool exact_zero = false;
  std::uint64_t kernel_skipped = 0;
};

// Records of min ||A q^T|| over 0 < |q| <= t, exhaustive over |q| <= Q_max.
// Ties between vectors of equal norm and equal error go to the
// lexicographically smallest q.
RecordSearch best_approx_records(const Matrix& A, std::int64_t Q_max,
                                 const EnumConfig& cfg = {},
                                 ZeroPolicy policy = ZeroPolicy::kStop);

struct ExponentEstimate {
  // sup of log(1/err)/log|q| over records with |q| >= cutoff
  double omega_sup = 0;
  // minus the least-squares slope of log err against log|q|, same records
  double omega_slope = 0;
  // log(1/err)/log(Q_max) for the smallest err found in the whole box
  double omega_tail = 0;
  double omega_log = 0;
  bool has_omega_log = false;
  bool infinite = false;  // an exact zero was found
  std::int64_t cutoff = 10;
  std::int64_t Q_max = 0;
  std::size_t records_used = 0;
  std::uint64_t kernel_skipped = 0;
  std::vector<ApproxRecord> records;
};

ExponentEstimate estimate_omega(const RecordSearch& search, std::int64_t cutoff = 10);

// sup over records past cutoff of log(|q|^omega err) / (-log log |q|).
double estimate_omega_log(const std::vector<ApproxRecord>& records, double omega,
                          std::int64_t cutoff = 10);

// omega of the transpose of the full parametrizing matrix.
ExponentEstimate estimate_sigma(const ParamMatrix& A, std::int64_t Q_max,
                                std::int64_t cutoff = 10, const EnumConfig& cfg = {},
                                ZeroPolicy policy = ZeroPolicy::kStop);

struct C0Certificate {
  Real c0;                        // min(1, min ||A q|| / phi(|q|))
  std::int64_t Q_max = 0;         // valid for 0 < |q| <= Q_max
  std::int64_t argmin_norm = 0;   // 0 when capped at 1
  bool capped = false;
  std::uint64_t kernel_skipped = 0;
  ApproxFunction phi;
};

// Throws RationalDependenceError on an exact zero unless policy skips the
// kernel.
C0Certificate badly_approx_constant(const Matrix& A, const ApproxFunction& phi,
                                    std::int64_t Q_max, const EnumConfig& cfg = {},
                                    ZeroPolicy policy = ZeroPolicy::kStop);

// omega/((n-1) omega + n) - tol <= sigma <= (omega - n + 1)/n + tol.
GuardedBool check_transference(const Scalar& omega, const Scalar& sigma, int n,
                               const Scalar& tol);

// A_k = (1 k; 0 I_d) A.
ParamMatrix shift_matrix(const ParamMatrix& A, const std::vector<std::int64_t>& k);

// 1 x n and n x 1 matrices from a vector.
Matrix row_matrix(const std::vector<Scalar>& y);
Matrix column_matrix(const std::vector<Scalar>& y);

}  // namespace ratnear

#endif  // RATNEAR_EXPONENTS_H_
