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

#include <cmath>

#include "ratnear/bounds.h"
#include "ratnear/errors.h"

namespace ratnear {
namespace {

Scalar S(const char* text) { return Scalar::parse(text); }
double D(const Real& x) { return x.convert_to<double>(); }

ParamMatrix golden_line() { return ParamMatrix(1, 1, {S("0"), S("(1+sqrt(5))/2")}); }

TEST(ConstTest, Cdm) {
  EXPECT_NEAR(D(const_Cdm(0, 0)), 1.0, 1e-30);
  EXPECT_NEAR(D(const_Cdm(1, 1)), 8 * M_PI * M_PI, 1e-12);
  EXPECT_NEAR(D(const_Cdm(2, 1)), 64 * M_PI * M_PI, 1e-11);
  EXPECT_NEAR(D(const_Cdm(1, 2)), 8 * std::pow(M_PI, 4), 1e-10);
  EXPECT_THROW(const_Cdm(-1, 1), PreconditionError);
}

TEST(BoundPhiTest, Examples) {
  ApproxFunction phi = ApproxFunction::power_log(S("0.1"), S("1"));
  Real a = bound_phi_a(phi, 1, 1, 100, Real("0.05"));
  EXPECT_NEAR(D(a), 64 * M_PI * M_PI * 0.05 * 200 * 200, 1e-6);
  EXPECT_NEAR(D(a) / 1.2633e6, 1.0, 1e-4);
  Real b = bound_phi_b(phi, 1, 1, 100, Real("0.05"));
  EXPECT_NEAR(D(b), 8 * M_PI * M_PI * 0.05 * 200, 1e-9);
  EXPECT_NEAR(D(b), 789.57, 0.01);
}

TEST(BoundPhiTest, MainTermWhenQDominates) {
  ApproxFunction phi = ApproxFunction::power_log(S("0.1"), S("1"));
  // 1/phi(1/delta) = 10/delta = 20 < Q = 100.
  Real a = bound_phi_a(phi, 1, 1, 100, Real("0.5"));
  EXPECT_NEAR(D(a), D(const_Cdm(2, 1)) * 0.5 * 100 * 100, 1e-6);
  // Q = 1: the 1/phi term wins.
  Real small = bound_phi_a(phi, 1, 1, 1, Real("0.5"));
  EXPECT_NEAR(D(small), D(const_Cdm(2, 1)) * 0.5 * 20 * 20, 1e-8);
}

TEST(BoundPhiTest, PhiBIsPhiAWithDShifted) {
  ApproxFunction phi = ApproxFunction::power_log(S("0.3"), S("1.5"));
  for (std::int64_t Q : {1, 7, 50}) {
    for (const char* delta : {"0.4", "0.01"}) {
      EXPECT_NEAR(D(bound_phi_b(phi, 2, 1, Q, Real(delta))),
                  D(bound_phi_a(phi, 1, 1, Q, Real(delta))), 1e-9);
    }
  }
  // d = 0: constant in Q.
  EXPECT_EQ(D(bound_phi_b(phi, 0, 2, 3, Real("0.1"))),
            D(bound_phi_b(phi, 0, 2, 3000, Real("0.1"))));
}

TEST(BoundDualTest, DirectEvaluation) {
  Real v = bound_dual(Real(2), 1, Real("0.1"), Real("0.1"), 1000, Real("1e-4"));
  long double pi2 = M_PIl * M_PIl;
  long double cstar = pi2 * std::pow(2.0L, 4.1L) * 10;
  long double want = std::max(pi2, cstar * 1e-4L * std::pow(1000.0L, 2.1L));
  EXPECT_NEAR(D(v) / static_cast<double>(want), 1.0, 1e-12);
  // Small delta: the pi^(2m) floor.
  Real floor_v = bound_dual(Real(2), 1, Real("0.1"), Real("0.1"), 1000, Real("1e-12"));
  EXPECT_NEAR(D(floor_v), M_PI * M_PI, 1e-12);
  EXPECT_THROW(bound_dual(Real(2), 1, Real(0), Real("0.1"), 10, Real("0.1")),
               PreconditionError);
}

TEST(BoundMonotoneTest, AllFormulas) {
  // Where phi dominates these are constant in theory; allow rounding.
  const Real slack("1e-40");
  ApproxFunction phi = ApproxFunction::power_log(S("0.2"), S("1"));
  Real prev_a = 0, prev_b = 0, prev_d = 0;
  for (std::int64_t Q = 1; Q <= 4096; Q *= 4) {
    Real a = bound_phi_a(phi, 1, 2, Q, Real("0.01"));
    Real b = bound_phi_b(phi, 1, 2, Q, Real("0.01"));
    Real du = bound_dual(Real("1.5"), 2, Real("0.3"), Real("0.1"), Q, Real("0.01"));
    EXPECT_GE(a, prev_a * (1 - slack));
    EXPECT_GE(b, prev_b * (1 - slack));
    EXPECT_GE(du, prev_d * (1 - slack));
    prev_a = a;
    prev_b = b;
    prev_d = du;
  }
  prev_a = prev_b = prev_d = 0;
  for (double delta = 1e-6; delta <= 0.5; delta *= 3) {
    Real a = bound_phi_a(phi, 1, 2, 30, Real(delta));
    Real b = bound_phi_b(phi, 1, 2, 30, Real(delta));
    Real du = bound_dual(Real("1.5"), 2, Real("0.3"), Real("0.1"), 30, Real(delta));
    EXPECT_GE(a, prev_a * (1 - slack));
    EXPECT_GE(b, prev_b * (1 - slack));
    EXPECT_GE(du, prev_d * (1 - slack));
    prev_a = a;
    prev_b = b;
    prev_d = du;
  }
}

TEST(VerifyGridTest, GoldenLinePhiA) {
  BoundOptions opt;
  opt.kind = BoundKind::kPhiA;
  GridVerification v = verify_grid(golden_line(), opt, {16, 64, 256},
                                   {S("1/2"), S("1/8"), S("1/64"), S("1/1024")});
  EXPECT_EQ(v.violations, 0u);
  EXPECT_EQ(v.cells.size(), 12u);
  EXPECT_NEAR(D(v.certificate.c0), 0.3819660112501051, 1e-12);
  for (const BoundReport& r : v.cells) {
    EXPECT_EQ(r.pass, GuardedBool::kTrue) << r.Q << " " << r.delta.source();
    EXPECT_LE(r.ratio, 1);
  }
}

TEST(VerifyGridTest, TrivialCellPasses) {
  BoundOptions opt;
  opt.kind = BoundKind::kPhiA;
  GridVerification v = verify_grid(golden_line(), opt, {10}, {S("0.6")});
  ASSERT_EQ(v.cells.size(), 1u);
  EXPECT_EQ(v.cells[0].upper(), 19u * 19u);
  EXPECT_EQ(v.cells[0].pass, GuardedBool::kTrue);
}

TEST(VerifyGridTest, GoldenLinePhiB) {
  BoundOptions opt;
  opt.kind = BoundKind::kPhiB;
  GridVerification v = verify_grid(golden_line(), opt, {16, 128},
                                   {S("1/2"), S("1/16"), S("1/256")});
  EXPECT_EQ(v.violations, 0u);
}

TEST(VerifyGridTest, DualOnTransposedRow) {
  BoundOptions opt;
  opt.kind = BoundKind::kDual;
  opt.exponent = 1.0;
  GridVerification v = verify_grid(golden_line(), opt, {16, 64}, {S("1/4"), S("1/32")});
  EXPECT_EQ(v.violations, 0u);
  for (const BoundReport& r : v.cells) EXPECT_GE(r.kernel_multiplicity, 1u);
}

TEST(VerifyGridTest, ZeroMatrixHasNoCertificate) {
  BoundOptions opt;
  EXPECT_THROW(verify_grid(ParamMatrix::zero(1, 1), opt, {16}, {S("1/4")}),
               RationalDependenceError);
}

TEST(VerifyGridTest, CertificateRangeEnforced) {
  BoundOptions opt;
  opt.c0_qmax = 10;
  // delta = 1/64 needs J = 32 > 10.
  EXPECT_THROW(verify_grid(golden_line(), opt, {16}, {S("1/64")}), CertificateError);
  EXPECT_NO_THROW(verify_grid(golden_line(), opt, {16}, {S("1/8")}));
}

TEST(AsympTest, Tau0) {
  EXPECT_NEAR(D(tau0(1, 1.0)), 1.0, 1e-30);
  EXPECT_NEAR(D(tau0(2, 1.5)), 0.5, 1e-30);
  EXPECT_NEAR(D(tau0(1, 4.0)), 0.25, 1e-30);
}

TEST(AsympTest, ZeroMatrixIsDegenerate) {
  std::vector<AsympRow> rows = asymp_ratio(ParamMatrix::zero(1, 1), 1.0, S("0.1"), {8, 64, 512});
  ASSERT_EQ(rows.size(), 3u);
  for (const AsympRow& r : rows) {
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.measured.count_certain,
              static_cast<std::uint64_t>((2 * r.Q - 1) * (2 * r.Q - 1)));
  }
}

TEST(AsympTest, GoldenRatiosStayBracketed) {
  std::vector<AsympRow> rows =
      asymp_ratio(golden_line(), 1.0, S("0.1"), {64, 128, 256, 512, 1024});
  for (const AsympRow& r : rows) {
    EXPECT_FALSE(r.degenerate);
    EXPECT_GE(r.ratio, Real("1e-2"));
    EXPECT_LE(r.ratio, Real("1e2"));
    EXPECT_NEAR(D(r.main_term), r.delta.to_double() * r.Q * r.Q, 1e-9 * D(r.main_term));
  }
  // A second epsilon gives ratios of the same order.
  std::vector<AsympRow> other = asymp_ratio(golden_line(), 1.0, S("0.2"), {1024});
  EXPECT_LT(std::fabs(std::log10(D(other[0].ratio) / D(rows.back().ratio))), 1.0);
}

}  // namespace
}  // namespace ratnear
