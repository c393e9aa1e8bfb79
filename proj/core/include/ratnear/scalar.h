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

#ifndef RATNEAR_SCALAR_H_
#define RATNEAR_SCALAR_H_

#include <string>
#include <string_view>

#include "ratnear/surd.h"

namespace ratnear {

enum class GuardedBool { kFalse, kTrue, kAmbiguous };

const char* to_string(GuardedBool b);

// Working precision (fractional bits) and guard band 2^-guard_bits.
struct Precision {
  unsigned bits = 192;
  unsigned guard_bits = 96;
};

// 192 unless overridden by the RATNEAR_PRECISION environment variable.
unsigned default_precision_bits();
Precision default_precision();

Rational guard_value(unsigned guard_bits);

// Closed interval with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

// A real number given by a source string in the surd grammar together with
// its exact value. The source string is kept so files round-trip verbatim.
//
// Grammar: integers, decimals (1.25, 3e-4), + - * /, parentheses, unary
// minus, sqrt(k) for a positive rational k, and x^n for an integer n.
class Scalar {
 public:
  Scalar() : source_("0") {}
  Scalar(long v);  // NOLINT(google-explicit-constructor)

  static Scalar parse(std::string_view text);
  static Scalar from_rational(const Rational& r);
  static Scalar from_surd(const Surd& v);

  const std::string& source() const { return source_; }
  const Surd& value() const { return value_; }
  bool is_rational() const { return value_.is_rational(); }
  bool is_zero() const { return value_.is_zero(); }
  int sign() const { return value_.sign(); }

  // Enclosure of width at most 2^-precision.
  Interval enclose(unsigned precision) const;
  double to_double() const { return value_.to_double(); }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value_ == b.value_;
  }

 private:
  Scalar(std::string source, Surd value)
      : source_(std::move(source)), value_(std::move(value)) {}

  std::string source_;
  Surd value_;
};

int compare(const Scalar& a, const Scalar& b);

Scalar dist_to_nearest_int(const Scalar& x);
Interval dist_to_nearest_int(const Interval& x);

// True if a < b - guard, False if a >= b + guard, Ambiguous otherwise.
// The Scalar form decides exactly; the Interval form works on enclosures.
GuardedBool guarded_less(const Scalar& a, const Scalar& b, const Scalar& guard);
GuardedBool guarded_less(const Interval& a, const Interval& b,
                         const Rational& guard);

}  // namespace ratnear

#endif  // RATNEAR_SCALAR_H_
