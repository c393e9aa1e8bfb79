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

#include "ratnear/surd.h"

#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "ratnear/errors.h"

namespace ratnear {
namespace {

constexpr std::uint64_t kMaxRadicand = std::uint64_t{1} << 62;

std::vector<std::uint64_t> prime_factors(std::uint64_t s) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= s; ++p) {
    if (s % p == 0) {
      out.push_back(p);
      while (s % p == 0) s /= p;
    }
  }
  if (s > 1) out.push_back(s);
  return out;
}

}  // namespace

Integer floor_rational(const Rational& r) {
  Integer n = boost::multiprecision::numerator(r);
  Integer d = boost::multiprecision::denominator(r);
  Integer q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Integer ceil_rational(const Rational& r) { return -floor_rational(-r); }

std::pair<Integer, std::uint64_t> squarefree_split(const Integer& k) {
  if (k <= 0) throw ParseError("sqrt of a non-positive integer");
  if (k >= Integer("1000000000000000000")) {
    throw ParseError("sqrt radicand too large (limit 10^18)");
  }
  std::uint64_t r = k.convert_to<std::uint64_t>();
  Integer c = 1;
  std::uint64_t s = 1;
  for (std::uint64_t p = 2; p <= 1000000 && p * p <= r; ++p) {
    int e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) c *= p;
    if (e % 2 == 1) s *= p;
  }
  if (r > 1) {
    // Every remaining prime factor exceeds 10^6, so r is p, p*q or p^2.
    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(r)));
    while (root * root > r) --root;
    while ((root + 1) * (root + 1) <= r) ++root;
    if (root * root == r) {
      c *= root;
    } else {
      s *= r;
    }
  }
  return {c, s};
}

Surd::Surd(const Rational& r) {
  if (r != 0) terms_.emplace(1, r);
}

Surd Surd::sqrt_of(const Integer& k) {
  auto [c, s] = squarefree_split(k);
  Surd out;
  out.add_term(s, Rational(c));
  return out;
}

bool Surd::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational Surd::rational_part() const {
  auto it = terms_.find(1);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Surd::add_term(std::uint64_t s, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Surd Surd::operator-() const {
  Surd out = *this;
  for (auto& [s, c] : out.terms_) c = -c;
  return out;
}

Surd& Surd::operator+=(const Surd& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  return *this;
}

Surd& Surd::operator-=(const Surd& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, -c);
  return *this;
}

Surd& Surd::operator*=(const Surd& o) {
  Surd out;
  for (const auto& [s, c] : terms_) {
    for (const auto& [t, e] : o.terms_) {
      std::uint64_t g = std::gcd(s, t);
      unsigned __int128 key =
          static_cast<unsigned __int128>(s / g) * static_cast<unsigned __int128>(t / g);
      if (key >= kMaxRadicand) throw Error("surd radicand overflow");
      out.add_term(static_cast<std::uint64_t>(key), c * e * g);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

Surd Surd::inverse() const {
  if (is_zero()) throw Error("division by zero");
  std::set<std::uint64_t> primes;
  for (const auto& [s, c] : terms_) {
    for (auto p : prime_factors(s)) primes.insert(p);
  }
  Surd x = *this;
  Surd num(Rational(1));
  // Each conjugation clears one prime from every radicand of x.
  for (auto p : primes) {
    Surd conj = x;
    for (auto& [s, c] : conj.terms_) {
      if (s % p == 0) c = -c;
    }
    num *= conj;
    x *= conj;
  }
  Rational r = x.rational_part();
  for (auto& [s, c] : num.terms_) c /= r;
  return num;
}

Surd& Surd::operator/=(const Surd& o) {
  if (o.is_rational()) {
    Rational r = o.rational_part();
    if (r == 0) throw Error("division by zero");
    for (auto& [s, c] : terms_) c /= r;
    return *this;
  }
  return *this *= o.inverse();
}

Surd Surd::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Surd out(Rational(1));
  Surd base = *this;
  while (e > 0) {
    if (e & 1) out *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return out;
}

void Surd::enclose_scaled(unsigned bits, Integer* lo, Integer* hi) const {
  Integer l = 0;
  Integer h = 0;
  Integer scale = Integer(1) << bits;
  for (const auto& [s, c] : terms_) {
    const Integer p = boost::multiprecision::numerator(c);
    const Integer q = boost::multiprecision::denominator(c);
    if (s == 1) {
      Rational v = c * scale;
      l += floor_rational(v);
      h += ceil_rational(v);
      continue;
    }
    Integer n = p * p * s * scale * scale;
    Integer r = boost::multiprecision::sqrt(n);
    Integer tl = r / q;
    Integer th = (r + 1 + q - 1) / q;
    if (p < 0) {
      l -= th;
      h -= tl;
    } else {
      l += tl;
      h += th;
    }
  }
  *lo = l;
  *hi = h;
}

int Surd::sign() const {
  if (is_rational()) {
    Rational r = rational_part();
    return r > 0 ? 1 : (r < 0 ? -1 : 0);
  }
  for (unsigned bits = 64;; bits *= 2) {
    Integer lo, hi;
    enclose_scaled(bits, &lo, &hi);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
}

Integer Surd::floor() const {
  if (is_rational()) return floor_rational(rational_part());
  for (unsigned bits = 64;; bits *= 2) {
    Integer lo, hi;
    enclose_scaled(bits, &lo, &hi);
    Integer fl = lo >> bits;  // arithmetic shift floors for negatives
    Integer fh = hi >> bits;
    if (fl == fh) return fl;
  }
}

double Surd::to_double() const {
  Integer lo, hi;
  enclose_scaled(80, &lo, &hi);
  Rational v(lo, Integer(1) << 80);
  return v.convert_to<double>();
}

std::string Surd::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    std::string cs = c.str();
    if (!first) out += " + ";
    first = false;
    if (s == 1) {
      out += cs;
    } else {
      out += "(" + cs + ")*sqrt(" + std::to_string(s) + ")";
    }
  }
  return out;
}

int compare(const Surd& a, const Surd& b) { return (a - b).sign(); }

Surd dist_to_nearest_int(const Surd& x) {
  Surd half(Rational(1, 2));
  Integer k = (x + half).floor();
  Surd d = x - Surd(Rational(k));
  return d.abs();
}

}  // namespace ratnear
