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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.h"
#include "ratnear/covering.h"
#include "ratnear/errors.h"

namespace ratnear {
namespace {

Scalar S(const char* text) { return Scalar::parse(text); }
double D(const Real& x) { return x.convert_to<double>(); }

// Direct floating check of a witness, with a small slack for ties.
// Length of [lo, hi] covered by balls of radius r around a/q, q in
// [q_lo, q_hi], by sorting and merging.
double farey_union(int q_lo, int q_hi, double lo, double hi, double r) {
  std::vector<std::pair<long double, long double>> iv;
  for (int q = q_lo; q <= q_hi; ++q) {
    for (int a = 0; a <= q; ++a) {
      long double c = static_cast<long double>(a) / q;
      iv.emplace_back(std::max<long double>(c - r, lo), std::min<long double>(c + r, hi));
    }
  }
  std::sort(iv.begin(), iv.end());
  long double total = 0, cur_lo = iv[0].first, cur_hi = iv[0].second;
  for (const auto& [a, b] : iv) {
    if (a > cur_hi) {
      total += cur_hi - cur_lo;
      cur_lo = a;
    }
    cur_hi = std::max(cur_hi, b);
  }
  total += cur_hi - cur_lo;
  return static_cast<double>(total);
}

bool witness_ok(const ParamMatrix& A, const std::vector<Scalar>& x, std::int64_t Q,
                const Scalar& delta, const Witness& w) {
  const int d = A.d(), m = A.m();
  if (w.q < 1 || w.q > Q) return false;
  const long double dl = delta.to_double();
  const long double r = 1 / (std::pow(static_cast<long double>(Q), 1.0L / d) *
                             std::pow(dl, static_cast<long double>(m) / d));
  for (int i = 0; i < d; ++i) {
    if (w.a[i] < 0 || w.a[i] > w.q) return false;
    if (std::fabs(w.q * static_cast<long double>(x[i].to_double()) - w.a[i]) >= r + 1e-12L) {
      return false;
    }
  }
  for (int j = 0; j < m; ++j) {
    long double v = w.q * oracle::to_f128(A.beta(j).value());
    for (int i = 0; i < d; ++i) v += w.a[i] * static_cast<long double>(oracle::to_f128(A.block(i, j).value()));
    if (std::fabs(v - w.b[j]) >= dl + 1e-12L) return false;
  }
  return true;
}

TEST(WitnessTest, ZeroMatrixUsesQOne) {
  // With Q = 1 the radius is 1, so q = 1 and the nearest integer always work.
  ParamMatrix Z = ParamMatrix::zero(1, 1);
  for (const char* x : {"0", "0.3", "0.7", "1"}) {
    std::optional<Witness> w = minkowski_witness(Z, {S(x)}, 1, S("1"));
    ASSERT_TRUE(w.has_value()) << x;
    EXPECT_EQ(w->q, 1);
    EXPECT_EQ(verify_witness(Z, {S(x)}, 1, S("1"), *w), GuardedBool::kTrue);
  }
}

TEST(WitnessTest, ZeroMatrixLargerQ) {
  // Radius 1/5: the smallest q has |q x - a| < 1/5, i.e. the first q <= 5
  // putting q x within 1/5 of an integer.
  ParamMatrix Z = ParamMatrix::zero(1, 1);
  const std::pair<const char*, std::int64_t> cases[] = {
      {"0", 1}, {"0.1", 1}, {"0.3", 3}, {"0.5", 2}, {"0.7", 3}, {"1", 1}};
  for (const auto& [x, q] : cases) {
    std::optional<Witness> w = minkowski_witness(Z, {S(x)}, 5, S("1"));
    ASSERT_TRUE(w.has_value()) << x;
    EXPECT_EQ(w->q, q) << x;
    EXPECT_EQ(verify_witness(Z, {S(x)}, 5, S("1"), *w), GuardedBool::kTrue);
  }
}

TEST(WitnessTest, SqrtTwoExample) {
  ParamMatrix A(1, 1, {S("0"), S("sqrt(2)")});
  std::optional<Witness> w = minkowski_witness(A, {S("0.5")}, 100, S("0.15"));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(witness_ok(A, {S("0.5")}, 100, S("0.15"), *w));
  EXPECT_EQ(verify_witness(A, {S("0.5")}, 100, S("0.15"), *w), GuardedBool::kTrue);
}

TEST(WitnessTest, TamperedWitnessIsRejected) {
  ParamMatrix A(1, 1, {S("0"), S("sqrt(2)")});
  Witness w = *minkowski_witness(A, {S("0.5")}, 100, S("0.15"));
  Witness bad = w;
  bad.b[0] += 1;
  EXPECT_EQ(verify_witness(A, {S("0.5")}, 100, S("0.15"), bad), GuardedBool::kFalse);
  bad = w;
  bad.a[0] += 3;
  EXPECT_EQ(verify_witness(A, {S("0.5")}, 100, S("0.15"), bad), GuardedBool::kFalse);
  bad = w;
  bad.q = 101;
  EXPECT_EQ(verify_witness(A, {S("0.5")}, 100, S("0.15"), bad), GuardedBool::kFalse);
}

TEST(WitnessTest, PreconditionsChecked) {
  ParamMatrix A(1, 1, {S("0"), S("sqrt(2)")});
  EXPECT_THROW(minkowski_witness(A, {S("1.5")}, 100, S("0.5")), PreconditionError);
  EXPECT_THROW(minkowski_witness(A, {S("0.5")}, 100, S("0.001")), PreconditionError);
  EXPECT_THROW(minkowski_witness(A, {S("0.5"), S("0.5")}, 100, S("0.5")), DimensionError);
}

TEST(WitnessTest, RandomSweepAlwaysSucceeds) {
  std::mt19937_64 g(17);
  std::uniform_int_distribution<int> frac(0, 1000);
  for (int t = 0; t < 200; ++t) {
    int d = 1 + t % 2;
    int m = 1 + (t / 2) % 2;
    ParamMatrix A = oracle::random_matrix(g, d, m);
    std::int64_t Q = t % 3 == 0 ? 10 : 100;
    std::vector<Scalar> x;
    for (int i = 0; i < d; ++i) x.push_back(Scalar::from_rational(Rational(frac(g), 1000)));
    double lo = std::pow(static_cast<double>(Q), -1.0 / m);
    double dv = lo + (1 - lo) * frac(g) / 1000.0;
    Scalar delta = Scalar::parse(std::to_string(dv));
    if (delta.to_double() < lo) delta = Scalar(1);
    std::optional<Witness> w = minkowski_witness(A, x, Q, delta);
    ASSERT_TRUE(w.has_value()) << format_matrix(A);
    EXPECT_EQ(verify_witness(A, x, Q, delta, *w), GuardedBool::kTrue);
    EXPECT_TRUE(witness_ok(A, x, Q, delta, *w));
  }
}

TEST(ProofKappaTest, Values) {
  EXPECT_NEAR(D(proof_kappa(1, 1, Real(1))), 1 / (4096 * M_PI * M_PI), 1e-18);
  EXPECT_NEAR(D(proof_kappa(1, 1, Real("0.5"))) * 2, D(proof_kappa(1, 1, Real(1))), 1e-20);
  EXPECT_THROW(proof_kappa(1, 1, Real(0)), PreconditionError);
}

TEST(CoverageTest, ZeroMatrixMatchesFareyUnion) {
  CoverageResult r = ubiquity_coverage(ParamMatrix::zero(1, 1), 100, S("1"), S("1/2"), Ball{{0.5}, 0.5},
                                       Sampler{});
  // Balls of radius 2/Q^2 around a/q, 50 < q <= 100, leave gaps (for
  // instance around 0.005), so the union falls short of the whole interval.
  EXPECT_NEAR(r.fraction, farey_union(51, 100, 0, 1, 2.0 / (100.0 * 100.0)), 1e-12);
  EXPECT_LT(r.fraction, 1.0);
  EXPECT_FALSE(r.empty);
}

TEST(CoverageTest, LargeKappaCoversLess) {
  ParamMatrix Z = ParamMatrix::zero(1, 1);
  CoverageResult all = ubiquity_coverage(Z, 10, S("1"), S("0.5"), Ball{{0.5}, 0.5}, Sampler{});
  CoverageResult few = ubiquity_coverage(Z, 10, S("1"), S("0.99"), Ball{{0.5}, 0.5}, Sampler{});
  EXPECT_LT(few.ball_count, all.ball_count);
  EXPECT_LT(few.fraction, all.fraction);
}

TEST(CoverageTest, MonotoneInKappa) {
  ParamMatrix A(1, 1, {S("0"), S("(1+sqrt(5))/2")});
  double prev = 2;
  for (const char* kappa : {"0.01", "0.1", "0.3", "0.6", "0.9"}) {
    CoverageResult r = ubiquity_coverage(A, 256, S("0.2"), S(kappa), Ball{{0.5}, 0.5}, Sampler{});
    EXPECT_LE(r.fraction, prev + 1e-12) << kappa;
    prev = r.fraction;
  }
}

TEST(CoverageTest, MinkowskiRadiusCoversUnitInterval) {
  ParamMatrix A(1, 1, {S("0"), S("sqrt(2)")});
  for (const char* delta : {"0.1", "0.35", "1"}) {
    CoverageResult r = ubiquity_coverage(A, 100, S(delta), S("0"), Ball{{0.5}, 0.5}, Sampler{},
                                         RadiusMode::kMinkowski);
    EXPECT_DOUBLE_EQ(r.fraction, 1.0) << delta;
  }
}

TEST(CoverageTest, MinkowskiRadiusCoversSquare) {
  ParamMatrix A(2, 1, {S("0"), S("sqrt(2)"), S("sqrt(3)")});
  Sampler s;
  s.kind = Sampler::Kind::kMonteCarlo;
  s.samples = 20000;
  s.seed = 4;
  CoverageResult r = ubiquity_coverage(A, 50, S("0.3"), S("0"), Ball{{0.5, 0.5}, 0.5}, s,
                                       RadiusMode::kMinkowski);
  EXPECT_EQ(r.covered, r.samples);
}

TEST(CoverageTest, ExactAndGridSamplersAgree) {
  ParamMatrix A(1, 1, {S("0"), S("(1+sqrt(5))/2")});
  CoverageResult exact = ubiquity_coverage(A, 512, S("0.2"), S("0.05"), Ball{{0.4}, 0.3}, Sampler{});
  Sampler grid;
  grid.kind = Sampler::Kind::kGrid;
  grid.resolution = 20000;
  CoverageResult g = ubiquity_coverage(A, 512, S("0.2"), S("0.05"), Ball{{0.4}, 0.3}, grid);
  EXPECT_NEAR(g.fraction, exact.fraction, 2e-3);
  EXPECT_EQ(g.samples, 20000u);
  EXPECT_DOUBLE_EQ(g.fraction, static_cast<double>(g.covered) / g.samples);
  Sampler mc;
  mc.kind = Sampler::Kind::kMonteCarlo;
  mc.samples = 40000;
  CoverageResult c = ubiquity_coverage(A, 512, S("0.2"), S("0.05"), Ball{{0.4}, 0.3}, mc);
  EXPECT_NEAR(c.fraction, exact.fraction, 5 * c.std_error + 1e-9);
}

TEST(CoverageTest, EmptyResonantSetIsFlagged) {
  // ||q/2|| < 1/10 fails for odd q, and kappa leaves only q = 9.
  ParamMatrix A(1, 1, {S("1/2"), S("0")});
  CoverageResult r = ubiquity_coverage(A, 9, S("1/10"), S("0.9"), Ball{{0.5}, 0.5}, Sampler{});
  EXPECT_TRUE(r.empty);
  EXPECT_EQ(r.fraction, 0.0);
}

}  // namespace
}  // namespace ratnear
