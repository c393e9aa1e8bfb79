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

#include "ratnear/real.h"

#include <cmath>

#include <boost/math/constants/constants.hpp>

#include "ratnear/errors.h"

namespace ratnear {
namespace {

unsigned g_precision_bits = 0;

unsigned digits_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398)) + 2;
}

struct PrecisionInit {
  PrecisionInit() { set_working_precision(default_precision_bits()); }
};
const PrecisionInit kInit;

}  // namespace

void set_working_precision(unsigned bits) {
  if (bits < 53) bits = 53;
  g_precision_bits = bits;
  Real::default_precision(digits_for_bits(bits));
}

unsigned working_precision_bits() { return g_precision_bits; }

Real to_real(const Surd& x) {
  if (x.is_rational()) return to_real(x.rational_part());
  unsigned bits = g_precision_bits + 16;
  Integer lo, hi;
  x.enclose_scaled(bits, &lo, &hi);
  Real r;
  mpfr_set_z(r.backend().data(), lo.backend().data(), MPFR_RNDN);
  mpfr_div_2ui(r.backend().data(), r.backend().data(), bits, MPFR_RNDN);
  return r;
}

Real to_real(const Scalar& x) { return to_real(x.value()); }

Real to_real(const Rational& x) {
  Real r;
  mpfr_set_q(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Rational to_rational(const Real& x) {
  if (!boost::multiprecision::isfinite(x)) {
    throw Error("non-finite value has no exact rational form");
  }
  Integer mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.backend().data(), x.backend().data());
  if (e >= 0) return Rational(mant << static_cast<unsigned>(e));
  return Rational(mant, Integer(1) << static_cast<unsigned>(-e));
}

Scalar to_scalar(const Real& x) { return Scalar::from_rational(to_rational(x)); }

Real real_pi() { return boost::math::constants::pi<Real>(); }

Real log_convention(const Real& t) {
  if (t <= boost::multiprecision::exp(Real(1))) return Real(1);
  return boost::multiprecision::log(t);
}

double log_convention(double t) {
  if (t <= std::exp(1.0)) return 1.0;
  return std::log(t);
}

}  // namespace ratnear
