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

#include "ratnear/scalar.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "ratnear/errors.h"

namespace ratnear {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Surd parse() {
    Surd v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse scalar '" + std::string(text_) + "' at " +
                     std::to_string(pos_) + ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Surd expr() {
    Surd v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Surd term() {
    Surd v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        Surd d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  Surd unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Surd power() {
    Surd base = primary();
    if (!accept('^')) return base;
    skip_space();
    bool neg = false;
    if (accept('-')) {
      neg = true;
    } else {
      accept('+');
    }
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_ || pos_ - start > 6) fail("bad integer exponent");
    long e = std::stol(std::string(text_.substr(start, pos_ - start)));
    if (neg) {
      if (base.is_zero()) fail("zero to a negative power");
      e = -e;
    }
    return base.pow(e);
  }

  Surd primary() {
    skip_space();
    if (accept('(')) {
      Surd v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      Surd arg = expr();
      if (!accept(')')) fail("expected ')'");
      if (!arg.is_rational() || arg.rational_part() <= 0) {
        fail("sqrt needs a positive rational argument");
      }
      Rational r = arg.rational_part();
      Integer num = boost::multiprecision::numerator(r);
      Integer den = boost::multiprecision::denominator(r);
      // sqrt(p/q) = sqrt(p*q)/q
      Surd root = Surd::sqrt_of(num * den);
      return root / Surd(Rational(den));
    }
    return number();
  }

  Surd number() {
    std::size_t start = pos_;
    std::string digits;
    long exp10 = 0;
    bool any = false;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_++];
      any = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_++];
        --exp10;
        any = true;
      }
    }
    if (!any) {
      pos_ = start;
      fail("expected a number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      bool neg = false;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        neg = text_[pos_] == '-';
        ++pos_;
      }
      std::size_t es = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (es == pos_) {
        pos_ = save;
      } else {
        if (pos_ - es > 6) fail("exponent too large");
        long e = std::stol(std::string(text_.substr(es, pos_ - es)));
        exp10 += neg ? -e : e;
      }
    }
    // A leading zero would make the conversion read the digits as octal.
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational v{Integer(digits)};
    Integer ten = 10;
    if (exp10 > 0) {
      v *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(exp10)));
    } else if (exp10 < 0) {
      v /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-exp10)));
    }
    return Surd(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Rational pow2(long e) {
  if (e >= 0) return Rational(Integer(1) << e);
  return Rational(Integer(1), Integer(1) << -e);
}

Rational dist_rational(const Rational& x) {
  Integer k = floor_rational(x + Rational(1, 2));
  Rational d = x - Rational(k);
  return d < 0 ? Rational(-d) : d;
}

}  // namespace

const char* to_string(GuardedBool b) {
  switch (b) {
    case GuardedBool::kTrue:
      return "true";
    case GuardedBool::kFalse:
      return "false";
    case GuardedBool::kAmbiguous:
      return "ambiguous";
  }
  return "?";
}

unsigned default_precision_bits() {
  const char* env = std::getenv("RATNEAR_PRECISION");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0' && v >= 64 && v <= 4096) {
      return static_cast<unsigned>(v);
    }
  }
  return 192;
}

Precision default_precision() {
  Precision p;
  p.bits = default_precision_bits();
  p.guard_bits = p.bits / 2;
  return p;
}

Rational guard_value(unsigned guard_bits) {
  return pow2(-static_cast<long>(guard_bits));
}

Scalar::Scalar(long v) : source_(std::to_string(v)), value_(Rational(v)) {}

Scalar Scalar::parse(std::string_view text) {
  Parser p(text);
  Surd v = p.parse();
  std::string src(text);
  auto b = src.find_first_not_of(" \t\r\n");
  auto e = src.find_last_not_of(" \t\r\n");
  src = b == std::string::npos ? std::string() : src.substr(b, e - b + 1);
  return Scalar(std::move(src), std::move(v));
}

Scalar Scalar::from_rational(const Rational& r) {
  return Scalar(r.str(), Surd(r));
}

Scalar Scalar::from_surd(const Surd& v) { return Scalar(v.to_string(), v); }

Interval Scalar::enclose(unsigned precision) const {
  if (value_.is_rational()) {
    Rational r = value_.rational_part();
    return {r, r};
  }
  unsigned extra = 2;
  for (std::size_t t = value_.terms().size(); t > 0; t >>= 1) ++extra;
  unsigned bits = precision + extra;
  Integer lo, hi;
  value_.enclose_scaled(bits, &lo, &hi);
  Integer den = Integer(1) << bits;
  return {Rational(lo, den), Rational(hi, den)};
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  return Scalar::from_surd(a.value_ + b.value_);
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  return Scalar::from_surd(a.value_ - b.value_);
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  return Scalar::from_surd(a.value_ * b.value_);
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.value_.is_zero()) throw Error("division by zero");
  return Scalar::from_surd(a.value_ / b.value_);
}
Scalar Scalar::operator-() const { return Scalar::from_surd(-value_); }

int compare(const Scalar& a, const Scalar& b) {
  return compare(a.value(), b.value());
}

Scalar dist_to_nearest_int(const Scalar& x) {
  return Scalar::from_surd(dist_to_nearest_int(x.value()));
}

Interval dist_to_nearest_int(const Interval& x) {
  const Rational half(1, 2);
  if (x.hi - x.lo >= 1) return {Rational(0), half};
  // dist is piecewise linear: extremes sit at endpoints, integers and
  // half-integers.
  Rational dlo = dist_rational(x.lo);
  Rational dhi = dist_rational(x.hi);
  Rational mn = dlo < dhi ? dlo : dhi;
  Rational mx = dlo < dhi ? dhi : dlo;
  Integer k = ceil_rational(x.lo);
  if (Rational(k) <= x.hi) mn = 0;
  Integer h = ceil_rational(x.lo - half);
  if (Rational(h) + half <= x.hi) mx = half;
  return {mn, mx};
}

GuardedBool guarded_less(const Scalar& a, const Scalar& b,
                         const Scalar& guard) {
  if (guard.sign() <= 0) throw PreconditionError("guard must be positive");
  Surd diff = a.value() - b.value();
  if ((diff + guard.value()).sign() < 0) return GuardedBool::kTrue;
  if ((diff - guard.value()).sign() >= 0) return GuardedBool::kFalse;
  return GuardedBool::kAmbiguous;
}

GuardedBool guarded_less(const Interval& a, const Interval& b,
                         const Rational& guard) {
  if (a.hi < b.lo - guard) return GuardedBool::kTrue;
  if (a.lo >= b.hi + guard) return GuardedBool::kFalse;
  return GuardedBool::kAmbiguous;
}

}  // namespace ratnear
