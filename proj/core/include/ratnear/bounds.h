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

#ifndef RATNEAR_BOUNDS_H_
#define RATNEAR_BOUNDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ratnear/approx_function.h"
#include "ratnear/config.h"
#include "ratnear/counting.h"
#include "ratnear/exponents.h"
#include "ratnear/matrix.h"
#include "ratnear/real.h"
#include "ratnear/scalar.h"

namespace ratnear {

enum class BoundKind { kPhiA, kPhiB, kOmegaA1, kOmegaA2, kDual, kAsympRatio };

const char* to_string(BoundKind k);
BoundKind parse_bound_kind(std::string_view text);

// C_{d,m} = 8^d pi^{2m}.
Real const_Cdm(int d, int m);

// C_{d+1,m} delta^m max{Q, 1/phi(1/delta)}^{d+1}.
Real bound_phi_a(const ApproxFunction& phi, int d, int m, std::int64_t Q,
                 const Real& delta);
// C_{d,m} delta^m max{Q, 1/phi(1/delta)}^d.
Real bound_phi_b(const ApproxFunction& phi, int d, int m, std::int64_t Q,
                 const Real& delta);
// max{pi^{2m}, C* delta^m Q^{m sigma + eps}},
// C* = pi^{2m} 2^{(sigma+2)m+eps} c0^{-m}.
Real bound_dual(const Real& sigma, int m, const Real& c0, const Real& eps,
                std::int64_t Q, const Real& delta);

struct BoundOptions {
  BoundKind kind = BoundKind::kPhiA;
  // Shape of phi for the phi kinds; the certified function is c0 * phi.
  ApproxFunction phi = ApproxFunction::power_log(Scalar(1), Scalar(1));
  Scalar eps = Scalar::parse("0.1");
  // Exponent fed to the omega kinds (omega of A) and to dual (sigma of A).
  // Estimated with omega_tail when absent.
  std::optional<double> exponent;
  std::int64_t exponent_qmax = 10000;
  // Certificate range; 0 picks the smallest range covering the grid.
  std::int64_t c0_qmax = 0;
};

struct BoundReport {
  std::int64_t Q = 0;
  Scalar delta;
  CountResult measured;
  BoundKind kind = BoundKind::kPhiA;
  Real bound_value;
  Real ratio;  // measured upper / bound
  GuardedBool pass = GuardedBool::kAmbiguous;
  bool applicable = true;  // cell inside the hypotheses of the clause
  std::string clause;
  std::int64_t required_range = 0;  // certificate range the cell relies on
  // dual only
  std::uint64_t kernel_multiplicity = 1;
  bool bounded_regime = false;
  std::uint64_t exact_points = 0;
  GuardedBool bounded_pass = GuardedBool::kTrue;

  std::uint64_t upper() const {
    return measured.count_certain + measured.count_ambiguous;
  }
};

struct GridVerification {
  std::vector<BoundReport> cells;
  C0Certificate certificate;
  double exponent = 0;     // omega or sigma used, if any
  Real q0;                 // omega-a1 threshold c0^{-2/(eps omega)}
  std::uint64_t violations = 0;  // applicable cells with pass = False
  std::uint64_t ambiguous = 0;
  std::uint64_t not_applicable = 0;
};

// Compares N_A (N'_A over integer q in [0, Q] for phi-b) against the chosen
// bound on every (Q, delta) of the grid. Throws CertificateError when a cell
// needs a certificate range beyond opt.c0_qmax.
GridVerification verify_grid(const ParamMatrix& A, const BoundOptions& opt,
                             const std::vector<std::int64_t>& Qs,
                             const std::vector<Scalar>& deltas,
                             const std::vector<Scalar>& theta = {},
                             const EnumConfig& cfg = {});

struct AsympRow {
  std::int64_t Q = 0;
  Scalar delta;            // Q^{-tau0 + eps} rounded to the working precision
  CountResult measured;
  Real main_term;          // delta^m Q^{d+1}
  Real ratio;              // count_certain / main_term
  bool degenerate = false; // A = 0: every point is a hit
};

// tau0 = 1 / max{m, omega}.
Real tau0(int m, double omega);

std::vector<AsympRow> asymp_ratio(const ParamMatrix& A, double omega,
                                  const Scalar& eps,
                                  const std::vector<std::int64_t>& Qs,
                                  const EnumConfig& cfg = {});

}  // namespace ratnear

#endif  // RATNEAR_BOUNDS_H_
