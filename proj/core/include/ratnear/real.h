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

#ifndef RATNEAR_REAL_H_
#define RATNEAR_REAL_H_

#include <boost/multiprecision/mpfr.hpp>

#include "ratnear/scalar.h"

namespace ratnear {

// Floating point at the working precision, for transcendental quantities
// (pi, logs, powers with real exponents).
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

// Sets the precision of newly created Reals. Not thread-safe; call before
// spawning workers.
void set_working_precision(unsigned bits);
unsigned working_precision_bits();

Real to_real(const Surd& x);
Real to_real(const Scalar& x);
Real to_real(const Rational& x);

// Exact value of a finite Real.
Rational to_rational(const Real& x);
Scalar to_scalar(const Real& x);

Real real_pi();

// Natural log with log t = 1 for t <= e.
Real log_convention(const Real& t);
double log_convention(double t);

}  // namespace ratnear

#endif  // RATNEAR_REAL_H_
