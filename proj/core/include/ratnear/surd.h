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

#ifndef RATNEAR_SURD_H_
#define RATNEAR_SURD_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <boost/multiprecision/gmp.hpp>

namespace ratnear {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Floor and ceiling of a rational number.
Integer floor_rational(const Rational& r);
Integer ceil_rational(const Rational& r);

// Writes k = c^2 * s with s squarefree. Requires 0 < k < 10^18.
std::pair<Integer, std::uint64_t> squarefree_split(const Integer& k);

// An exact element of the multiquadratic field generated by square roots of
// positive integers, stored as sum_s c_s * sqrt(s) over squarefree s.
class Surd {
 public:
  Surd() = default;
  Surd(const Rational& r);  // NOLINT(google-explicit-constructor)
  Surd(long v) : Surd(Rational(v)) {}  // NOLINT(google-explicit-constructor)

  static Surd sqrt_of(const Integer& k);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  Rational rational_part() const;
  const std::map<std::uint64_t, Rational>& terms() const { return terms_; }

  Surd operator-() const;
  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator/=(const Surd& o);
  Surd inverse() const;
  Surd pow(long e) const;

  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend Surd operator/(Surd a, const Surd& b) { return a /= b; }
  friend bool operator==(const Surd& a, const Surd& b) {
    return a.terms_ == b.terms_;
  }

  int sign() const;
  Integer floor() const;
  Surd abs() const { return sign() < 0 ? -*this : *this; }

  // lo <= value * 2^bits <= hi.
  void enclose_scaled(unsigned bits, Integer* lo, Integer* hi) const;

  double to_double() const;
  std::string to_string() const;

 private:
  void add_term(std::uint64_t s, const Rational& c);

  std::map<std::uint64_t, Rational> terms_;
};

int compare(const Surd& a, const Surd& b);

// min_k |x - k|, exact.
Surd dist_to_nearest_int(const Surd& x);

}  // namespace ratnear

#endif  // RATNEAR_SURD_H_
