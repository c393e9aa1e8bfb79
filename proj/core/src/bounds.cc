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

#include "ratnear/bounds.h"

#include <algorithm>

#include "ratnear/errors.h"

namespace ratnear {
namespace {

using boost::multiprecision::pow;

Real ipow(const Real& x, int e) { return pow(x, Real(e)); }

// floor(1/(2 delta)) for delta <= 1/2, else 0 (trivial case, no sieve).
std::int64_t sieve_length(const Scalar& delta) {
  if (compare(delta.value(), Surd(Rational(1, 2))) > 0) return 0;
  return (Surd(1) / (Surd(2) * delta.value())).floor().convert_to<std::int64_t>();
}

std::int64_t sieve_length(const Real& delta) {
  if (delta > Real(0.5)) return 0;
  return boost::multiprecision::floor(1 / (2 * delta)).convert_to<std::int64_t>();
}

GuardedBool at_most(std::uint64_t measured, const Real& bound) {
  Real tol = bound * boost::multiprecision::ldexp(
                         Real(1), -static_cast<int>(working_precision_bits() / 2));
  Real x(measured);
  if (x <= bound - tol) return GuardedBool::kTrue;
  if (x > bound + tol) return GuardedBool::kFalse;
  return GuardedBool::kAmbiguous;
}

double estimate_tail(const Matrix& M, std::int64_t qmax, const EnumConfig& cfg,
                     ZeroPolicy policy) {
  ExponentEstimate e = estimate_omega(best_approx_records(M, qmax, cfg, policy));
  if (e.infinite) {
    throw PreconditionError("exponent is infinite (exact zero found); no bound applies");
  }
  return e.omega_tail;
}

void check_range(std::int64_t needed, std::int64_t certified) {
  if (certified > 0 && needed > certified) {
    throw CertificateError("certificate range " + std::to_string(certified) +
                           " does not cover the required " + std::to_string(needed));
  }
}

}  // namespace

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::kPhiA: return "phi-a";
    case BoundKind::kPhiB: return "phi-b";
    case BoundKind::kOmegaA1: return "omega-a1";
    case BoundKind::kOmegaA2: return "omega-a2";
    case BoundKind::kDual: return "dual";
    case BoundKind::kAsympRatio: return "asymp-ratio";
  }
  return "?";
}

BoundKind parse_bound_kind(std::string_view text) {
  for (auto k : {BoundKind::kPhiA, BoundKind::kPhiB, BoundKind::kOmegaA1,
                 BoundKind::kOmegaA2, BoundKind::kDual, BoundKind::kAsympRatio}) {
    if (text == to_string(k)) return k;
  }
  throw ParseError("unknown bound kind: " + std::string(text));
}

Real const_Cdm(int d, int m) {
  if (d < 0 || m < 0) throw PreconditionError("C_{d,m} needs d, m >= 0");
  return ipow(Real(8), d) * ipow(real_pi(), 2 * m);
}

Real bound_phi_a(const ApproxFunction& phi, int d, int m, std::int64_t Q,
                 const Real& delta) {
  if (Q < 1 || delta <= 0) throw PreconditionError("bound needs Q >= 1, delta > 0");
  Real big = std::max<Real>(Real(Q), Real(1 / phi(1 / delta)));
  return const_Cdm(d + 1, m) * ipow(delta, m) * ipow(big, d + 1);
}

Real bound_phi_b(const ApproxFunction& phi, int d, int m, std::int64_t Q,
                 const Real& delta) {
  if (Q < 1 || delta <= 0) throw PreconditionError("bound needs Q >= 1, delta > 0");
  Real big = std::max<Real>(Real(Q), Real(1 / phi(1 / delta)));
  return const_Cdm(d, m) * ipow(delta, m) * ipow(big, d);
}

Real bound_dual(const Real& sigma, int m, const Real& c0, const Real& eps,
                std::int64_t Q, const Real& delta) {
  if (c0 <= 0 || c0 > 1) throw PreconditionError("bound_dual needs 0 < c0 <= 1");
  if (eps <= 0) throw PreconditionError("bound_dual needs eps > 0");
  if (Q < 1 || delta <= 0) throw PreconditionError("bound needs Q >= 1, delta > 0");
  Real floor_term = ipow(real_pi(), 2 * m);
  Real cstar = floor_term * pow(Real(2), (sigma + 2) * m + eps) * ipow(1 / c0, m);
  Real main = cstar * ipow(delta, m) * pow(Real(Q), m * sigma + eps);
  return std::max<Real>(floor_term, main);
}

Real tau0(int m, double omega) {
  return 1 / std::max<Real>(Real(m), Real(omega));
}

std::vector<AsympRow> asymp_ratio(const ParamMatrix& A, double omega,
                                  const Scalar& eps,
                                  const std::vector<std::int64_t>& Qs,
                                  const EnumConfig& cfg) {
  if (Qs.empty()) throw PreconditionError("empty Q list");
  const int d = A.d();
  const int m = A.m();
  const Real expo = Real(to_real(eps)) - tau0(m, omega);
  std::vector<Scalar> deltas;
  for (auto Q : Qs) {
    if (Q < 1) throw PreconditionError("Q must be >= 1");
    deltas.push_back(to_scalar(pow(Real(Q), expo)));
  }
  GridCounts g = count_N_grid(A, Qs, deltas, {}, cfg);
  bool zero = true;
  for (const auto& e : A.full().entries()) zero = zero && e.is_zero();
  std::vector<AsympRow> rows;
  for (std::size_t i = 0; i < Qs.size(); ++i) {
    AsympRow r;
    r.Q = Qs[i];
    r.delta = deltas[i];
    r.measured.count_certain = g.certain[i][i];
    r.measured.count_ambiguous = g.ambiguous[i][i];
    r.main_term = ipow(to_real(r.delta), m) * ipow(Real(r.Q), d + 1);
    r.ratio = Real(r.measured.count_certain) / r.main_term;
    r.degenerate = zero;
    rows.push_back(std::move(r));
  }
  return rows;
}

GridVerification verify_grid(const ParamMatrix& A, const BoundOptions& opt,
                             const std::vector<std::int64_t>& Qs,
                             const std::vector<Scalar>& deltas,
                             const std::vector<Scalar>& theta,
                             const EnumConfig& cfg) {
  if (Qs.empty() || deltas.empty()) throw PreconditionError("empty grid");
  const int d = A.d();
  const int m = A.m();
  const Real eps = to_real(opt.eps);
  if (eps <= 0) throw PreconditionError("eps must be > 0");
  const std::int64_t Qmax = *std::max_element(Qs.begin(), Qs.end());
  GridVerification out;

  if (opt.kind == BoundKind::kAsympRatio) {
    double omega = opt.exponent ? *opt.exponent
                                : estimate_tail(A.full(), opt.exponent_qmax, cfg,
                                                ZeroPolicy::kStop);
    out.exponent = omega;
    for (auto& row : asymp_ratio(A, omega, opt.eps, Qs, cfg)) {
      BoundReport r;
      r.Q = row.Q;
      r.delta = row.delta;
      r.measured = row.measured;
      r.kind = opt.kind;
      r.bound_value = row.main_term;
      r.ratio = row.ratio;
      r.pass = GuardedBool::kTrue;
      r.applicable = false;  // reported, not asserted
      r.clause = "ratio to delta^m Q^(d+1), delta = Q^(-tau0+eps)";
      out.cells.push_back(std::move(r));
      ++out.not_applicable;
    }
    return out;
  }

  // Certificate and the certified function per kind.
  ApproxFunction phi_eff = opt.phi;
  Real sigma;
  std::string clause;
  Real omega_r;
  switch (opt.kind) {
    case BoundKind::kPhiA:
    case BoundKind::kPhiB: {
      if (opt.kind == BoundKind::kPhiB && d < 1) {
        throw DimensionError("phi-b needs d >= 1");
      }
      std::int64_t need = 1;
      for (const auto& dl : deltas) need = std::max(need, sieve_length(dl));
      check_range(need, opt.c0_qmax);
      const Matrix M = opt.kind == BoundKind::kPhiA ? A.full() : A.block_matrix();
      out.certificate = badly_approx_constant(M, opt.phi,
                                              opt.c0_qmax ? opt.c0_qmax : need, cfg);
      phi_eff = opt.phi.scaled(to_scalar(out.certificate.c0));
      clause = opt.kind == BoundKind::kPhiA
                   ? "A c0*phi-bad: C_{d+1,m} delta^m max{Q, 1/phi(1/delta)}^(d+1)"
                   : "A' c0*phi-bad: C_{d,m} delta^m max{Q, 1/phi(1/delta)}^d";
      break;
    }
    case BoundKind::kOmegaA1:
    case BoundKind::kOmegaA2: {
      double omega = opt.exponent ? *opt.exponent
                                  : estimate_tail(A.full(), opt.exponent_qmax, cfg,
                                                  ZeroPolicy::kStop);
      out.exponent = omega;
      omega_r = Real(omega);
      Real eps_prime = opt.kind == BoundKind::kOmegaA1 ? omega_r * omega_r * eps / 2
                                                       : omega_r * eps / (d + 1);
      std::int64_t need = 1;
      for (auto Q : Qs) {
        Real floor_delta = pow(Real(Q), -1 / omega_r + eps);
        Real delta0 = pow(Real(Q), -1 / omega_r);
        for (const auto& dl : deltas) {
          Real dr = to_real(dl);
          if (opt.kind == BoundKind::kOmegaA1) {
            if (dr >= floor_delta) need = std::max(need, sieve_length(dl));
          } else {
            need = std::max(need, sieve_length(std::max<Real>(dr, delta0)));
          }
        }
      }
      check_range(need, opt.c0_qmax);
      ApproxFunction shape =
          ApproxFunction::power_log(Scalar(1), to_scalar(omega_r + eps_prime));
      out.certificate = badly_approx_constant(A.full(), shape,
                                              opt.c0_qmax ? opt.c0_qmax : need, cfg);
      phi_eff = shape.scaled(to_scalar(out.certificate.c0));
      out.q0 = pow(out.certificate.c0, -2 / (eps * omega_r));
      clause = opt.kind == BoundKind::kOmegaA1
                   ? "omega(A): C_{d+1,m} delta^m Q^(d+1) for delta >= Q^(-1/omega+eps), Q >= Q0"
                   : "omega(A): C_{d+1,m} max{delta^m Q^(d+1), c0^(-d-1) Q^(d+1-m/omega+eps)}";
      break;
    }
    case BoundKind::kDual: {
      double s = opt.exponent
                     ? *opt.exponent
                     : estimate_sigma(A, opt.exponent_qmax, 10, cfg,
                                      ZeroPolicy::kSkipKernel)
                           .omega_tail;
      out.exponent = s;
      sigma = Real(s);
      const std::int64_t need = std::max<std::int64_t>(1, 2 * Qmax - 2);
      check_range(need, opt.c0_qmax);
      ApproxFunction shape =
          ApproxFunction::power_log(Scalar(1), to_scalar(sigma + eps / m));
      out.certificate = badly_approx_constant(A.full().transpose(), shape,
                                              opt.c0_qmax ? opt.c0_qmax : need, cfg,
                                              ZeroPolicy::kSkipKernel);
      clause = "sigma(A): mu * max{pi^(2m), C* delta^m Q^(m sigma+eps)}";
      break;
    }
    case BoundKind::kAsympRatio:
      break;
  }

  GridCounts g = opt.kind == BoundKind::kPhiB
                     ? count_Nprime_grid(A, Qs, deltas, theta, cfg)
                     : count_N_grid(A, Qs, deltas, theta, cfg);

  for (std::size_t i = 0; i < Qs.size(); ++i) {
    const std::int64_t Q = Qs[i];
    std::uint64_t mu = 1;
    std::uint64_t z = 0;
    if (opt.kind == BoundKind::kDual) {
      mu = count_exact_rational_points(A, 2 * Q - 1, {}, cfg);
      z = count_exact_rational_points(A, Q, theta, cfg);
    }
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      BoundReport r;
      r.Q = Q;
      r.delta = deltas[k];
      r.kind = opt.kind;
      r.clause = clause;
      r.measured.count_certain = g.certain[i][k];
      r.measured.count_ambiguous = g.ambiguous[i][k];
      const Real dr = to_real(deltas[k]);
      switch (opt.kind) {
        case BoundKind::kPhiA:
          r.bound_value = bound_phi_a(phi_eff, d, m, Q, dr);
          r.required_range = sieve_length(deltas[k]);
          break;
        case BoundKind::kPhiB:
          r.bound_value = bound_phi_b(phi_eff, d, m, Q, dr);
          r.required_range = sieve_length(deltas[k]);
          break;
        case BoundKind::kOmegaA1:
          r.bound_value = const_Cdm(d + 1, m) * ipow(dr, m) * ipow(Real(Q), d + 1);
          r.required_range = sieve_length(deltas[k]);
          r.applicable = dr >= pow(Real(Q), -1 / omega_r + eps) && Real(Q) >= out.q0;
          break;
        case BoundKind::kOmegaA2: {
          const Real c0 = out.certificate.c0;
          Real second = ipow(1 / c0, d + 1) *
                        pow(Real(Q), Real(d + 1) - m / omega_r + eps);
          r.bound_value = const_Cdm(d + 1, m) *
                          std::max<Real>(
                              Real(ipow(dr, m) * ipow(Real(Q), d + 1)), second);
          r.required_range = sieve_length(
              std::max<Real>(dr, Real(pow(Real(Q), -1 / omega_r))));
          break;
        }
        case BoundKind::kDual: {
          r.kernel_multiplicity = mu;
          r.exact_points = z;
          r.bound_value = Real(mu) * bound_dual(sigma, m, out.certificate.c0, eps, Q, dr);
          r.required_range = 2 * Q - 2;
          r.applicable = dr <= Real(0.5) || sigma >= Real(d + 1) / m;
          if (dr <= pow(Real(Q), -sigma - eps)) {
            r.bounded_regime = true;
            r.bounded_pass = at_most(r.upper(), ipow(real_pi(), 2 * m) + Real(z));
          }
          break;
        }
        case BoundKind::kAsympRatio:
          break;
      }
      r.ratio = Real(r.upper()) / r.bound_value;
      r.pass = at_most(r.upper(), r.bound_value);
      if (r.bounded_regime && r.bounded_pass != GuardedBool::kTrue) {
        r.pass = r.bounded_pass == GuardedBool::kFalse ? GuardedBool::kFalse
                                                       : GuardedBool::kAmbiguous;
      }
      if (!r.applicable) {
        ++out.not_applicable;
      } else if (r.pass == GuardedBool::kFalse) {
        ++out.violations;
      } else if (r.pass == GuardedBool::kAmbiguous) {
        ++out.ambiguous;
      }
      out.cells.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace ratnear
