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

#ifndef RATNEAR_COUNTING_H_
#define RATNEAR_COUNTING_H_

#include <cstdint>
#include <vector>

#include "ratnear/config.h"
#include "ratnear/matrix.h"
#include "ratnear/scalar.h"

namespace ratnear {

struct CountQuery {
  ParamMatrix A;
  std::int64_t Q = 1;
  Scalar delta;
  // (theta1, theta2) of length d + m; empty means zero.
  std::vector<Scalar> theta;
};

struct Hit {
  std::int64_t q = 0;
  std::vector<std::int64_t> a;
  // Signed offset of each component from its nearest integer.
  std::vector<double> residual;
};

// The true count lies in [count_certain, count_certain + count_ambiguous].
struct CountResult {
  std::uint64_t count_certain = 0;
  std::uint64_t count_ambiguous = 0;
  std::vector<Hit> hits;  // certain hits only, when requested
};

// Result of a maximum over a finite set of real q.
struct NprimeResult {
  CountResult count;
  std::size_t best_index = 0;  // first q in the set achieving count_certain
};

// N_A(Q, delta, theta): (q, a) in Z^{d+1}, |(q, a)| < Q,
// ||(q, a + theta1) A - theta2|| < delta.
CountResult count_N(const CountQuery& query, const EnumConfig& cfg = {},
                    bool collect_hits = false);

// The inner count of N'_A at a single real q.
CountResult count_Nprime_at(const ParamMatrix& A, const Scalar& q,
                            std::int64_t Q, const Scalar& delta,
                            const std::vector<Scalar>& theta,
                            const EnumConfig& cfg = {},
                            bool collect_hits = false);

// Maximum of count_Nprime_at over q_set; a lower bound for N'_A.
NprimeResult count_Nprime_over(const ParamMatrix& A,
                               const std::vector<Scalar>& q_set,
                               std::int64_t Q, const Scalar& delta,
                               const std::vector<Scalar>& theta,
                               const EnumConfig& cfg = {});

// R^kappa(Q, delta): q in (kappa Q, Q], a in [0, q]^d, ||(q, a) A|| < delta.
// members holds certain entries, ambiguous the undecidable ones, each as
// d + 1 consecutive integers (q, a_1, ..., a_d).
struct ResonantSet {
  int d = 0;
  std::vector<std::int32_t> members;
  std::vector<std::int32_t> ambiguous;

  std::size_t size() const { return members.size() / (d + 1); }
  std::size_t ambiguous_size() const { return ambiguous.size() / (d + 1); }
};

ResonantSet resonant_set(const ParamMatrix& A, std::int64_t Q,
                         const Scalar& delta, const Scalar& kappa,
                         const EnumConfig& cfg = {});

// Running-minimum records of q (log q)^2 ||q x|| ||q y||, y = alpha x + beta,
// for 2 <= q <= Q. An exact zero ends the sequence.
struct MultRecord {
  std::int64_t q = 0;
  double value = 0;
  bool exact_zero = false;
};

std::vector<MultRecord> mult_min_on_line(const Scalar& alpha, const Scalar& beta,
                                         const Scalar& x, std::int64_t Q,
                                         const EnumConfig& cfg = {});

// Counts for every (Q, delta) of a grid from a single enumeration of the
// largest box. certain[i][k] and ambiguous[i][k] belong to (Qs[i], deltas[k]).
struct GridCounts {
  std::vector<std::int64_t> Qs;
  std::vector<Scalar> deltas;
  std::vector<std::vector<std::uint64_t>> certain;
  std::vector<std::vector<std::uint64_t>> ambiguous;
};

GridCounts count_N_grid(const ParamMatrix& A, const std::vector<std::int64_t>& Qs,
                        const std::vector<Scalar>& deltas,
                        const std::vector<Scalar>& theta,
                        const EnumConfig& cfg = {});

// Per cell, the maximum over integer q in [0, Q] of the N' inner count, in the
// count_Nprime_over convention.
GridCounts count_Nprime_grid(const ParamMatrix& A,
                             const std::vector<std::int64_t>& Qs,
                             const std::vector<Scalar>& deltas,
                             const std::vector<Scalar>& theta,
                             const EnumConfig& cfg = {});

// Number of (q, a) with |(q, a)| < Q and (q, a + theta1) A - theta2 in Z^m
// exactly: the rational points of the subspace inside the box.
std::uint64_t count_exact_rational_points(const ParamMatrix& A, std::int64_t Q,
                                          const std::vector<Scalar>& theta,
                                          const EnumConfig& cfg = {});

}  // namespace ratnear

#endif  // RATNEAR_COUNTING_H_
