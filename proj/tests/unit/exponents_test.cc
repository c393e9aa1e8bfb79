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

#include "oracles.h"
#include "ratnear/errors.h"
#include "ratnear/exponents.h"

namespace ratnear {
namespace {

Scalar S(const char* text) { return Scalar::parse(text); }

Matrix one(const char* x) { return Matrix(1, 1, {S(x)}); }

std::vector<std::int64_t> record_norms(const RecordSearch& s) {
  std::vector<std::int64_t> out;
  for (const ApproxRecord& r : s.records) out.push_back(r.norm_q);
  return out;
}

void expect_well_formed(const RecordSearch& s) {
  for (std::size_t i = 1; i < s.records.size(); ++i) {
    EXPECT_GT(s.records[i].norm_q, s.records[i - 1].norm_q);
    EXPECT_LT(compare(s.records[i].err, s.records[i - 1].err), 0);
  }
}

TEST(RecordSearchTest, RationalEndsAtExactZero) {
  RecordSearch s = best_approx_records(one("1/3"), 10);
  EXPECT_TRUE(s.exact_zero);
  ASSERT_FALSE(s.records.empty());
  EXPECT_EQ(s.records.back().q, std::vector<std::int64_t>{3});
  EXPECT_TRUE(s.records.back().exact_zero);
  EXPECT_TRUE(estimate_omega(s, 1).infinite);
}

TEST(RecordSearchTest, GoldenRecordsAreFibonacci) {
  RecordSearch s = best_approx_records(one("(1+sqrt(5))/2-1"), 100000);
  expect_well_formed(s);
  EXPECT_EQ(record_norms(s),
            oracle::convergent_denominators(S("(1+sqrt(5))/2-1").value(), 100000));
  EXPECT_EQ(s.records.back().norm_q, 75025);
}

TEST(RecordSearchTest, QuadraticIrrationalsFollowConvergents) {
  for (const char* x : {"sqrt(2)", "sqrt(7)/3", "(3-sqrt(13))/5"}) {
    RecordSearch s = best_approx_records(one(x), 20000);
    expect_well_formed(s);
    EXPECT_EQ(record_norms(s), oracle::convergent_denominators(S(x).value(), 20000)) << x;
  }
}

TEST(RecordSearchTest, RowVectorMatchesBruteForce) {
  Matrix A(1, 2, {S("sqrt(2)"), S("sqrt(3)")});
  RecordSearch s = best_approx_records(A, 1000);
  expect_well_formed(s);
  std::vector<oracle::Record> want = oracle::approx_records(A, 1000);
  ASSERT_EQ(s.records.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(s.records[i].q, want[i].q) << i;
    EXPECT_EQ(s.records[i].norm_q, want[i].norm) << i;
    EXPECT_NEAR(s.records[i].err_double, static_cast<double>(want[i].err), 1e-15);
  }
}

TEST(RecordSearchTest, RandomMatricesMatchBruteForce) {
  std::mt19937_64 g(11);
  for (int t = 0; t < 8; ++t) {
    int rows = 1 + t % 2;
    int cols = 1 + (t / 2) % 2;
    ParamMatrix P = oracle::random_matrix(g, rows - 1, cols);
    const Matrix& A = P.full();
    RecordSearch s = best_approx_records(A, 60);
    std::vector<oracle::Record> want = oracle::approx_records(A, 60);
    ASSERT_EQ(s.records.size(), want.size()) << format_matrix(P);
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_EQ(s.records[i].q, want[i].q) << format_matrix(P);
    }
  }
}

TEST(RecordSearchTest, WorkersAgree) {
  Matrix A(2, 2, {S("sqrt(2)"), S("1/3"), S("sqrt(5)"), S("sqrt(3)-1")});
  RecordSearch base = best_approx_records(A, 80);
  for (int w : {2, 4, 8}) {
    EnumConfig cfg;
    cfg.workers = w;
    RecordSearch s = best_approx_records(A, 80, cfg);
    ASSERT_EQ(s.records.size(), base.records.size());
    for (std::size_t i = 0; i < s.records.size(); ++i) {
      EXPECT_EQ(s.records[i].q, base.records[i].q);
    }
  }
}

TEST(RecordSearchTest, BudgetIsEnforced) {
  EnumConfig cfg;
  cfg.budget = 10000;
  Matrix A(1, 3, {S("sqrt(2)"), S("sqrt(3)"), S("sqrt(5)")});
  EXPECT_THROW(best_approx_records(A, 100, cfg), ResourceLimitError);
}

TEST(EstimateOmegaTest, GoldenIsOne) {
  ExponentEstimate e = estimate_omega(best_approx_records(one("(1+sqrt(5))/2-1"), 100000), 100);
  EXPECT_FALSE(e.infinite);
  EXPECT_GE(e.omega_tail, 0.95);
  EXPECT_LE(e.omega_tail, 1.05);
  EXPECT_NEAR(e.omega_slope, 1.0, 0.01);
  // The sup ratio is dominated by 1 + log(sqrt 5)/log q at the first record
  // past the cutoff.
  EXPECT_NEAR(e.omega_sup, 1 + std::log(std::sqrt(5.0)) / std::log(144.0), 1e-3);
}

TEST(EstimateOmegaTest, RowVectorNearDirichlet) {
  Matrix A(1, 2, {S("sqrt(2)"), S("sqrt(3)")});
  ExponentEstimate e = estimate_omega(best_approx_records(A, 10000), 50);
  EXPECT_GE(e.omega_tail, 1.95);
  EXPECT_LE(e.omega_tail, 2.2);
  EXPECT_GE(e.omega_sup, e.omega_tail);
}

TEST(EstimateOmegaTest, TooFewRecords) {
  EXPECT_THROW(estimate_omega(best_approx_records(one("sqrt(2)"), 20), 10),
               InsufficientDataError);
}

std::vector<ApproxRecord> synthetic(double log_power) {
  std::vector<ApproxRecord> out;
  for (std::int64_t q = 16; q <= (std::int64_t{1} << 40); q *= 2) {
    ApproxRecord r;
    r.q = {q};
    r.norm_q = q;
    double lq = std::log(static_cast<double>(q));
    r.err_double = std::exp(-lq - log_power * std::log(lq));
    out.push_back(r);
  }
  return out;
}

TEST(EstimateOmegaLogTest, Synthetic) {
  EXPECT_NEAR(estimate_omega_log(synthetic(2.0), 1.0), 2.0, 1e-9);
  EXPECT_NEAR(estimate_omega_log(synthetic(0.0), 1.0), 0.0, 1e-9);
  EXPECT_THROW(estimate_omega_log(synthetic(0.0), 1.0, std::int64_t{1} << 50),
               InsufficientDataError);
}

TEST(EstimateOmegaLogTest, GoldenHasNoLogExponent) {
  // q ||q x|| stays above 1/(sqrt 5 + 1e-3) past q = 100.
  RecordSearch s = best_approx_records(one("(1+sqrt(5))/2-1"), 100000);
  EXPECT_LE(estimate_omega_log(s.records, 1.0, 100),
            std::log(std::sqrt(5.0) + 1e-3) / std::log(std::log(100.0)));
}

TEST(EstimateSigmaTest, OneByOneCoincides) {
  ParamMatrix A(Matrix(1, 1, {S("sqrt(3)")}));
  ExponentEstimate sigma = estimate_sigma(A, 5000);
  ExponentEstimate omega = estimate_omega(best_approx_records(one("sqrt(3)"), 5000));
  ASSERT_EQ(sigma.records.size(), omega.records.size());
  EXPECT_EQ(sigma.omega_sup, omega.omega_sup);
}

TEST(EstimateSigmaTest, IntegerKernelVariable) {
  ParamMatrix A(1, 1, {S("0"), S("sqrt(2)")});
  EXPECT_TRUE(estimate_sigma(A, 1000).infinite);
  ExponentEstimate e = estimate_sigma(A, 1000, 10, {}, ZeroPolicy::kSkipKernel);
  EXPECT_FALSE(e.infinite);
  EXPECT_GT(e.kernel_skipped, 0u);
  std::vector<std::int64_t> norms;
  for (const ApproxRecord& r : e.records) norms.push_back(r.norm_q);
  EXPECT_EQ(norms, oracle::convergent_denominators(S("sqrt(2)").value(), 1000));
}

TEST(EstimateSigmaTest, RationalIsInfinite) {
  EXPECT_TRUE(estimate_sigma(ParamMatrix(1, 1, {S("1/2"), S("2/3")}), 100).infinite);
}

TEST(BadlyApproxTest, GoldenAgainstOneThirdT) {
  C0Certificate c = badly_approx_constant(
      one("(1+sqrt(5))/2"), ApproxFunction::power_log(S("1/3"), S("1")), 10000);
  EXPECT_TRUE(c.capped);
  EXPECT_EQ(c.c0, 1);
}

TEST(BadlyApproxTest, GoldenAgainstOneOverT) {
  Surd x = S("(1+sqrt(5))/2").value();
  C0Certificate c = badly_approx_constant(one("(1+sqrt(5))/2"),
                                          ApproxFunction::power_log(S("1"), S("1")), 100000);
  EXPECT_NEAR(c.c0.convert_to<double>(), static_cast<double>(oracle::c0_scan(x, 1, 100000)),
              1e-15);
  EXPECT_NEAR(c.c0.convert_to<double>(), 0.3819660112501051, 1e-12);
  EXPECT_EQ(c.argmin_norm, 1);
}

TEST(BadlyApproxTest, PositiveForSlowerPhi) {
  C0Certificate c = badly_approx_constant(
      Matrix(1, 2, {S("sqrt(2)"), S("sqrt(3)")}),
      ApproxFunction::power_log(S("1"), S("2.1")), 300);
  EXPECT_GT(c.c0, 0);
}

TEST(BadlyApproxTest, RationalThrows) {
  EXPECT_THROW(badly_approx_constant(one("1/3"), ApproxFunction::power_log(S("1"), S("1")), 10),
               RationalDependenceError);
}

TEST(TransferenceTest, Examples) {
  EXPECT_EQ(check_transference(S("2"), S("1/2"), 2, S("0.01")), GuardedBool::kTrue);
  EXPECT_EQ(check_transference(S("2"), S("0.53"), 2, S("0.01")), GuardedBool::kFalse);
  EXPECT_EQ(check_transference(S("5"), S("1"), 2, S("0")), GuardedBool::kTrue);
  EXPECT_EQ(check_transference(S("5"), S("3"), 2, S("0")), GuardedBool::kFalse);
  // The interval is closed: both ends pass with zero tolerance.
  EXPECT_EQ(check_transference(S("5"), S("5/7"), 2, S("0")), GuardedBool::kTrue);
  EXPECT_EQ(check_transference(S("5"), S("2"), 2, S("0")), GuardedBool::kTrue);
  EXPECT_EQ(check_transference(S("5"), S("5/7-1/1000"), 2, S("0")), GuardedBool::kFalse);
  // omega = n pins sigma to 1/n.
  EXPECT_EQ(check_transference(S("3"), S("1/3"), 3, S("0")), GuardedBool::kTrue);
  EXPECT_EQ(check_transference(S("3"), S("1/3+1/100"), 3, S("0")), GuardedBool::kFalse);
  EXPECT_THROW(check_transference(S("1"), S("1/2"), 2, S("0")), PreconditionError);
  EXPECT_THROW(check_transference(S("2"), S("1/3"), 2, S("0")), PreconditionError);
  EXPECT_EQ(check_transference(S("5"), S("5/7"), 2, S("1/1000")), GuardedBool::kTrue);
}

TEST(TransferenceTest, RowVectorEstimates) {
  // omega of the 1 x 2 row and of its 2 x 1 transpose.
  std::vector<Scalar> y{S("sqrt(2)"), S("sqrt(3)")};
  ExponentEstimate w = estimate_omega(best_approx_records(row_matrix(y), 10000), 50);
  ExponentEstimate s = estimate_omega(best_approx_records(column_matrix(y), 10000), 50);
  EXPECT_EQ(check_transference(Scalar::parse(std::to_string(w.omega_tail)),
                               Scalar::parse(std::to_string(s.omega_tail)), 2, S("0.05")),
            GuardedBool::kTrue);
}

TEST(ShiftMatrixTest, Examples) {
  ParamMatrix A(1, 1, {S("sqrt(3)"), S("1/5")});
  EXPECT_EQ(shift_matrix(A, {0}).full(), A.full());
  ParamMatrix B = shift_matrix(A, {2});
  EXPECT_EQ(B.beta(0), S("sqrt(3)+2/5"));
  EXPECT_EQ(B.block(0, 0), S("1/5"));
  EXPECT_EQ(shift_matrix(B, {-2}).full(), A.full());
  EXPECT_THROW(shift_matrix(A, {1, 2}), DimensionError);
}

TEST(ShiftMatrixTest, SigmaIsInvariant) {
  // The transposed system is the form q0 beta + q1 alpha; shifting maps q to
  // (q0, q1 + k q0), which keeps errors and stretches |q| by at most 1 + |k|.
  // Best errors up to t on one side are therefore reached on the other side
  // within t (1 + |k|), and the tail estimates are tied the same way.
  const std::int64_t q_max = 3000;
  ParamMatrix A(1, 1, {S("sqrt(3)"), S("(1+sqrt(5))/2")});
  RecordSearch base = best_approx_records(A.full().transpose(), q_max);
  ExponentEstimate base_est = estimate_omega(base, 50);
  auto best_at = [](const RecordSearch& s, std::int64_t t) {
    double best = 1;
    for (const ApproxRecord& r : s.records) {
      if (r.norm_q <= t) best = std::min(best, r.err_double);
    }
    return best;
  };
  const double log_q = std::log(static_cast<double>(q_max));
  EXPECT_NEAR(base_est.omega_tail, -std::log(best_at(base, q_max)) / log_q, 1e-9);
  for (std::int64_t k : {-3, 1, 7}) {
    ParamMatrix B = shift_matrix(A, {k});
    RecordSearch shifted = best_approx_records(B.full().transpose(), q_max);
    const std::int64_t f = 1 + (k < 0 ? -k : k);
    for (std::int64_t t = 1; t * f <= q_max; t = t * 3 + 1) {
      EXPECT_LE(best_at(shifted, t * f), best_at(base, t) * (1 + 1e-12)) << k << " " << t;
      EXPECT_LE(best_at(base, t * f), best_at(shifted, t) * (1 + 1e-12)) << k << " " << t;
    }
    ExponentEstimate e = estimate_omega(shifted, 50);
    EXPECT_GE(e.omega_tail + 1e-9, -std::log(best_at(base, q_max / f)) / log_q) << k;
    EXPECT_GE(base_est.omega_tail + 1e-9, -std::log(best_at(shifted, q_max / f)) / log_q) << k;
    // Typical size of the gap at this Q_max.
    EXPECT_NEAR(e.omega_tail, base_est.omega_tail, 0.2) << k;
  }
}

TEST(DirichletFloorTest, OmegaSupAtLeastTypical) {
  for (const char* x : {"sqrt(5)", "1/7+sqrt(2)", "(sqrt(3)-1)/4"}) {
    Matrix A(1, 2, {S(x), S("sqrt(11)/3")});
    ExponentEstimate e = estimate_omega(best_approx_records(A, 1000), 10);
    EXPECT_GE(e.omega_sup, 2 - 0.05) << x;
  }
}

}  // namespace
}  // namespace ratnear
