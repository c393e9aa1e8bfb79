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

#ifndef RATNEAR_COVERING_H_
#define RATNEAR_COVERING_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "ratnear/config.h"
#include "ratnear/matrix.h"
#include "ratnear/real.h"
#include "ratnear/scalar.h"

namespace ratnear {

// (q, a, b) with 1 <= q <= Q, |q x_i - a_i| < (Q^{1/d} delta^{m/d})^{-1},
// |(q, a) A - b| < delta componentwise and 0 <= a_i <= q.
struct Witness {
  std::int64_t q = 0;
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
};

// Exhaustive search over q = 1..Q. Needs x in [0,1]^d and
// Q^{-1/m} <= delta <= 1. An empty result means no witness exists, which the
// covering lemma rules out.
std::optional<Witness> minkowski_witness(const ParamMatrix& A,
                                         const std::vector<Scalar>& x,
                                         std::int64_t Q, const Scalar& delta);

// Independent re-check of a witness on enclosures at cfg.precision.
GuardedBool verify_witness(const ParamMatrix& A, const std::vector<Scalar>& x,
                           std::int64_t Q, const Scalar& delta, const Witness& w,
                           const EnumConfig& cfg = {});

// mu_d(B) / (4^{d+2} C_{d+1,m}).
Real proof_kappa(int d, int m, const Real& ball_measure);

// Sup-norm ball inside [0,1]^d.
struct Ball {
  std::vector<double> center;
  double radius = 0.5;
  double measure() const;
};

struct Sampler {
  enum class Kind { kExact, kGrid, kMonteCarlo };
  Kind kind = Kind::kExact;  // exact interval union, d = 1 only
  std::int64_t resolution = 100;  // grid points per axis
  std::int64_t samples = 100000;  // Monte-Carlo draws
  std::uint64_t seed = 1;
};

enum class RadiusMode {
  kUbiquity,   // kappa^{-1} / (Q^{(d+1)/d} delta^{m/d}) for every ball
  kMinkowski,  // 1 / (q Q^{1/d} delta^{m/d}), each ball by its own q
};

struct CoverageResult {
  std::uint64_t samples = 0;  // 0 for the exact measure
  std::uint64_t covered = 0;
  double fraction = 0;
  double std_error = 0;
  double radius = 0;          // common radius, or the largest one
  Scalar kappa;
  std::size_t ball_count = 0;
  std::size_t ambiguous_balls = 0;  // left out of the union
  bool empty = false;
};

CoverageResult ubiquity_coverage(const ParamMatrix& A, std::int64_t Q,
                                 const Scalar& delta, const Scalar& kappa,
                                 const Ball& ball, const Sampler& sampler,
                                 RadiusMode mode = RadiusMode::kUbiquity,
                                 const EnumConfig& cfg = {});

}  // namespace ratnear

#endif  // RATNEAR_COVERING_H_
