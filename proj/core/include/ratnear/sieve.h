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

#ifndef RATNEAR_SIEVE_H_
#define RATNEAR_SIEVE_H_

#include <cstdint>
#include <vector>

#include "ratnear/config.h"
#include "ratnear/matrix.h"
#include "ratnear/real.h"
#include "ratnear/scalar.h"

namespace ratnear {

struct Complex {
  Real re = 0;
  Real im = 0;
};

// Points y^(r) in [0,1)^k with separations lambda_i, a box
// N_i < l_i <= N_i + L_i, and coefficients: c(l) over the box (row-major,
// first coordinate slowest) for the large sieve, d(y^(r)) over the points
// for the dual form. Point and lambda data are exact rationals.
struct SieveInstance {
  int k = 1;
  std::vector<std::vector<Rational>> points;
  std::vector<Rational> lambdas;
  std::vector<std::int64_t> N;
  std::vector<std::int64_t> L;
  std::vector<Complex> box_coeffs;
  std::vector<Complex> point_coeffs;

  std::size_t box_size() const;
};

struct SieveCheck {
  Real lhs;
  Real rhs;
  Real ratio;
  GuardedBool holds = GuardedBool::kAmbiguous;
};

// F_J(theta) = (sin(pi J theta) / (J sin(pi theta)))^2, and 1 at integers.
Real fejer_kernel(const Rational& theta, std::int64_t J);
Real fejer_kernel(const Real& theta, std::int64_t J);

struct FejerReport {
  std::int64_t J = 0;
  std::uint64_t grid_points = 0;
  std::uint64_t in_window = 0;  // points with ||theta|| <= delta
  std::uint64_t ambiguous = 0;
  std::vector<Rational> violations;
  Real min_majorant;            // min of (pi^2/4) F_J over the window
};

// For each theta with ||theta|| <= delta checks (pi^2/4) F_J(theta) >= 1,
// J = floor(1/(2 delta)).
FejerReport check_fejer_majorant(const std::vector<Rational>& theta_grid,
                                 const Scalar& delta);

// Throws SeparationError naming the first offending pair (r, s).
void verify_separation(const SieveInstance& inst);

SieveCheck large_sieve_check(const SieveInstance& inst);
SieveCheck dual_sieve_check(const SieveInstance& inst);

// Reproducible random instance: k in [1, max_k], R in [1, max_R], L_i in
// [1, max_L], N_i in [-10, 10], lambda_i in [0.02, 0.5], points by rejection
// sampling, coefficients uniform on the unit disc.
SieveInstance random_sieve_instance(std::uint64_t seed, int max_k = 3,
                                    int max_R = 50, int max_L = 20);

// Instance whose point coefficients are unimodular, d = e(phase).
SieveInstance with_unimodular_point_coeffs(SieveInstance inst, std::uint64_t seed);

struct SeparationResult {
  Scalar value;                 // min ||A (j1 - j2)^T|| over distinct j1, j2
  std::vector<std::int64_t> k;  // achieving difference
  bool exact_zero = false;
  bool infinite = false;        // J = 1: a single point
};

SeparationResult separation_of_sieve_points(const Matrix& A, std::int64_t J,
                                            const EnumConfig& cfg = {});

}  // namespace ratnear

#endif  // RATNEAR_SIEVE_H_
