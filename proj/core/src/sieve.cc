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

#include "ratnear/sieve.h"

#include <random>

#include "ratnear/errors.h"
#include "ratnear/exponents.h"

namespace ratnear {
namespace {

inline Complex cmul(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline void cmac(Complex& acc, const Complex& a, const Complex& b) {
  acc.re += a.re * b.re - a.im * b.im;
  acc.im += a.re * b.im + a.im * b.re;
}

inline Real norm2(const Complex& a) { return a.re * a.re + a.im * a.im; }

// e(x) = exp(2 pi i x)
Complex expi(const Rational& x) {
  Real t = 2 * real_pi() * to_real(x - Rational(floor_rational(x)));
  return {boost::multiprecision::cos(t), boost::multiprecision::sin(t)};
}

Rational dist_rational(const Rational& x) {
  Integer k = floor_rational(x + Rational(1, 2));
  Rational d = x - Rational(k);
  return d < 0 ? Rational(-d) : d;
}

// P(l) = prod_i e(l_i y_i) over the box, row-major.
std::vector<Complex> box_weights(const SieveInstance& inst,
                                 const std::vector<Rational>& y) {
  std::vector<Complex> out{Complex{1, 0}};
  for (int i = 0; i < inst.k; ++i) {
    std::vector<Complex> w;
    w.reserve(static_cast<std::size_t>(inst.L[i]));
    Complex step = expi(y[i]);
    Complex cur = expi(y[i] * Rational(inst.N[i] + 1));
    for (std::int64_t l = 0; l < inst.L[i]; ++l) {
      w.push_back(cur);
      cur = cmul(cur, step);
    }
    std::vector<Complex> next;
    next.reserve(out.size() * w.size());
    for (const auto& o : out) {
      for (const auto& x : w) next.push_back(cmul(o, x));
    }
    out = std::move(next);
  }
  return out;
}

Real box_factor(const SieveInstance& inst) {
  Real f = 1;
  for (int i = 0; i < inst.k; ++i) {
    Real s = boost::multiprecision::sqrt(Real(inst.L[i])) +
             1 / boost::multiprecision::sqrt(to_real(inst.lambdas[i]));
    f *= s * s;
  }
  return f;
}

SieveCheck finish(Real lhs, Real rhs) {
  SieveCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.ratio = rhs > 0 ? Real(lhs / rhs) : Real(0);
  Real tol = rhs * boost::multiprecision::ldexp(
                       Real(1), -static_cast<int>(working_precision_bits() / 2));
  if (lhs < rhs - tol) {
    c.holds = GuardedBool::kTrue;
  } else if (lhs > rhs + tol) {
    c.holds = GuardedBool::kFalse;
  } else {
    c.holds = GuardedBool::kAmbiguous;
  }
  return c;
}

void validate(const SieveInstance& inst) {
  if (inst.k < 1) throw DimensionError("sieve dimension k must be >= 1");
  if (static_cast<int>(inst.lambdas.size()) != inst.k ||
      static_cast<int>(inst.N.size()) != inst.k ||
      static_cast<int>(inst.L.size()) != inst.k) {
    throw DimensionError("sieve lambdas/box must have k entries");
  }
  for (int i = 0; i < inst.k; ++i) {
    if (inst.lambdas[i] <= 0 || inst.lambdas[i] > Rational(1, 2)) {
      throw PreconditionError("lambda_i must lie in (0, 1/2]");
    }
    if (inst.L[i] < 1) throw PreconditionError("L_i must be >= 1");
  }
  for (const auto& y : inst.points) {
    if (static_cast<int>(y.size()) != inst.k) {
      throw DimensionError("sieve point has wrong dimension");
    }
  }
}

// Portable draws: no dependence on library distribution algorithms.
double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1p-53;
}

std::int64_t uniform_int(std::mt19937_64& g, std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(g() % span);
}

Complex unit_disc(std::mt19937_64& g) {
  for (;;) {
    double x = 2 * uniform01(g) - 1;
    double y = 2 * uniform01(g) - 1;
    if (x * x + y * y <= 1) return {Real(x), Real(y)};
  }
}

}  // namespace

std::size_t SieveInstance::box_size() const {
  std::size_t s = 1;
  for (auto l : L) s *= static_cast<std::size_t>(l);
  return s;
}

Real fejer_kernel(const Rational& theta, std::int64_t J) {
  if (J < 1) throw PreconditionError("fejer_kernel needs J >= 1");
  if (boost::multiprecision::denominator(theta) == 1) return Real(1);
  return fejer_kernel(to_real(theta), J);
}

Real fejer_kernel(const Real& theta, std::int64_t J) {
  if (J < 1) throw PreconditionError("fejer_kernel needs J >= 1");
  if (boost::multiprecision::floor(theta) == theta) return Real(1);
  Real pi = real_pi();
  Real num = boost::multiprecision::sin(pi * J * theta);
  Real den = J * boost::multiprecision::sin(pi * theta);
  Real v = num / den;
  return v * v;
}

FejerReport check_fejer_majorant(const std::vector<Rational>& theta_grid,
                                 const Scalar& delta) {
  if (delta.sign() <= 0 || compare(delta.value(), Surd(Rational(1, 2))) > 0) {
    throw PreconditionError("check_fejer_majorant needs 0 < delta <= 1/2");
  }
  FejerReport rep;
  rep.J = (Surd(1) / (Surd(2) * delta.value())).floor().convert_to<std::int64_t>();
  rep.grid_points = theta_grid.size();
  const Real quarter_pi2 = real_pi() * real_pi() / 4;
  const Real tol = boost::multiprecision::ldexp(
      Real(1), -static_cast<int>(working_precision_bits() / 2));
  bool first = true;
  for (const auto& th : theta_grid) {
    if (compare(Surd(dist_rational(th)), delta.value()) > 0) continue;
    ++rep.in_window;
    Real maj = quarter_pi2 * fejer_kernel(th, rep.J);
    if (first || maj < rep.min_majorant) {
      rep.min_majorant = maj;
      first = false;
    }
    if (maj < 1 - tol) {
      rep.violations.push_back(th);
    } else if (maj <= 1 + tol) {
      ++rep.ambiguous;
    }
  }
  return rep;
}

void verify_separation(const SieveInstance& inst) {
  validate(inst);
  const std::size_t R = inst.points.size();
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t s = r + 1; s < R; ++s) {
      bool ok = false;
      for (int i = 0; i < inst.k && !ok; ++i) {
        ok = dist_rational(inst.points[r][i] - inst.points[s][i]) >= inst.lambdas[i];
      }
      if (!ok) {
        throw SeparationError("points " + std::to_string(r) + " and " +
                                  std::to_string(s) + " are not separated",
                              static_cast<std::int64_t>(r),
                              static_cast<std::int64_t>(s));
      }
    }
  }
}

SieveCheck large_sieve_check(const SieveInstance& inst) {
  verify_separation(inst);
  if (inst.box_coeffs.size() != inst.box_size()) {
    throw DimensionError("large sieve needs one coefficient per box point");
  }
  Real lhs = 0;
  for (const auto& y : inst.points) {
    std::vector<Complex> w = box_weights(inst, y);
    Complex s;
    for (std::size_t l = 0; l < w.size(); ++l) cmac(s, inst.box_coeffs[l], w[l]);
    lhs += norm2(s);
  }
  Real mass = 0;
  for (const auto& c : inst.box_coeffs) mass += norm2(c);
  return finish(lhs, box_factor(inst) * mass);
}

SieveCheck dual_sieve_check(const SieveInstance& inst) {
  verify_separation(inst);
  if (inst.point_coeffs.size() != inst.points.size()) {
    throw DimensionError("dual large sieve needs one coefficient per point");
  }
  std::vector<Complex> T(inst.box_size());
  for (std::size_t r = 0; r < inst.points.size(); ++r) {
    std::vector<Complex> w = box_weights(inst, inst.points[r]);
    for (std::size_t l = 0; l < w.size(); ++l) cmac(T[l], inst.point_coeffs[r], w[l]);
  }
  Real lhs = 0;
  for (const auto& t : T) lhs += norm2(t);
  Real mass = 0;
  for (const auto& c : inst.point_coeffs) mass += norm2(c);
  return finish(lhs, box_factor(inst) * mass);
}

SieveInstance random_sieve_instance(std::uint64_t seed, int max_k, int max_R,
                                    int max_L) {
  std::mt19937_64 g(seed);
  SieveInstance inst;
  inst.k = static_cast<int>(uniform_int(g, 1, max_k));
  const auto R = uniform_int(g, 1, max_R);
  for (int i = 0; i < inst.k; ++i) {
    inst.L.push_back(uniform_int(g, 1, max_L));
    inst.N.push_back(uniform_int(g, -10, 10));
    double lam = 0.02 + 0.48 * uniform01(g);
    inst.lambdas.emplace_back(lam);
  }
  const std::int64_t attempts = 200 * R;
  for (std::int64_t a = 0; a < attempts &&
                           static_cast<std::int64_t>(inst.points.size()) < R;
       ++a) {
    std::vector<Rational> y;
    for (int i = 0; i < inst.k; ++i) y.emplace_back(uniform01(g));
    bool ok = true;
    for (const auto& p : inst.points) {
      bool sep = false;
      for (int i = 0; i < inst.k && !sep; ++i) {
        sep = dist_rational(p[i] - y[i]) >= inst.lambdas[i];
      }
      if (!sep) {
        ok = false;
        break;
      }
    }
    if (ok) inst.points.push_back(std::move(y));
  }
  for (std::size_t l = 0; l < inst.box_size(); ++l) inst.box_coeffs.push_back(unit_disc(g));
  for (std::size_t r = 0; r < inst.points.size(); ++r) {
    inst.point_coeffs.push_back(unit_disc(g));
  }
  return inst;
}

SieveInstance with_unimodular_point_coeffs(SieveInstance inst, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  for (auto& c : inst.point_coeffs) c = expi(Rational(uniform01(g)));
  return inst;
}

SeparationResult separation_of_sieve_points(const Matrix& A, std::int64_t J,
                                            const EnumConfig& cfg) {
  if (J < 1) throw PreconditionError("J must be >= 1");
  SeparationResult out;
  if (J == 1) {
    out.infinite = true;
    return out;
  }
  RecordSearch rs = best_approx_records(A, J - 1, cfg, ZeroPolicy::kStop);
  const ApproxRecord& last = rs.records.back();
  out.value = last.err;
  out.k = last.q;
  out.exact_zero = last.exact_zero;
  return out;
}

}  // namespace ratnear
