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

#include "ratnear/residue.h"

#include "ratnear/errors.h"

namespace ratnear {
namespace {

constexpr unsigned kBits = 192;

const Integer& modulus() {
  static const Integer m = Integer(1) << kBits;
  return m;
}

Residue clamp_threshold(const Integer& t) {
  static const Integer top = (Integer(1) << (kBits - 1)) + 1;
  if (t <= 0) return Residue{};
  if (t >= top) return residue_from_integer(top);
  return residue_from_integer(t);
}

}  // namespace

Residue mul_small(const Residue& a, std::int64_t k) {
  bool neg = k < 0;
  unsigned __int128 uk = neg ? static_cast<unsigned __int128>(-(k + 1)) + 1
                             : static_cast<unsigned __int128>(k);
  auto l0 = static_cast<std::uint64_t>(a.lo);
  auto l1 = static_cast<std::uint64_t>(a.lo >> 64);
  unsigned __int128 p0 = static_cast<unsigned __int128>(l0) * uk;
  unsigned __int128 p1 = static_cast<unsigned __int128>(l1) * uk + (p0 >> 64);
  std::uint64_t p2 = a.hi * static_cast<std::uint64_t>(uk) +
                     static_cast<std::uint64_t>(p1 >> 64);
  Residue out;
  out.lo = (p1 << 64) | static_cast<std::uint64_t>(p0);
  out.hi = p2;
  return neg ? negate(out) : out;
}

Residue residue_from_integer(const Integer& v) {
  Integer u = v % modulus();
  if (u < 0) u += modulus();
  Residue r;
  Integer mask64 = (Integer(1) << 64) - 1;
  auto w0 = static_cast<std::uint64_t>((u & mask64).convert_to<unsigned long long>());
  auto w1 = static_cast<std::uint64_t>(((u >> 64) & mask64).convert_to<unsigned long long>());
  r.hi = static_cast<std::uint64_t>((u >> 128).convert_to<unsigned long long>());
  r.lo = (static_cast<unsigned __int128>(w1) << 64) | w0;
  return r;
}

Integer residue_to_integer(const Residue& a) {
  Integer v = Integer(a.hi);
  v <<= 64;
  v += Integer(static_cast<std::uint64_t>(a.lo >> 64));
  v <<= 64;
  v += Integer(static_cast<std::uint64_t>(a.lo));
  return v;
}

ResidueApprox residue_approx(const Surd& x, unsigned precision) {
  if (precision < 64 || precision > kBits) {
    throw PreconditionError("fixed-point precision must lie in [64, 192]");
  }
  Integer lo, hi;
  x.enclose_scaled(kBits, &lo, &hi);
  unsigned drop = kBits - precision;
  Integer r = (lo >> drop) << drop;  // floor for negatives too
  ResidueApprox out;
  out.r = residue_from_integer(r);
  out.err = hi - r;
  return out;
}

LinearForms::LinearForms(std::vector<std::vector<Surd>> coeff,
                         std::vector<Surd> offset, unsigned precision)
    : vars_(static_cast<int>(coeff.size())),
      comps_(static_cast<int>(offset.size())),
      coeff_(std::move(coeff)),
      exact_offset_(std::move(offset)) {
  rows_.resize(static_cast<std::size_t>(vars_) * comps_);
  row_err_.assign(static_cast<std::size_t>(vars_), Integer(0));
  for (int i = 0; i < vars_; ++i) {
    if (static_cast<int>(coeff_[i].size()) != comps_) {
      throw DimensionError("linear form coefficient rows differ in length");
    }
    for (int j = 0; j < comps_; ++j) {
      ResidueApprox ra = residue_approx(coeff_[i][j], precision);
      rows_[static_cast<std::size_t>(i) * comps_ + j] = ra.r;
      if (ra.err > row_err_[i]) row_err_[i] = ra.err;
    }
  }
  offset_.resize(static_cast<std::size_t>(comps_));
  offset_err_ = 0;
  for (int j = 0; j < comps_; ++j) {
    ResidueApprox ra = residue_approx(exact_offset_[j], precision);
    offset_[j] = ra.r;
    if (ra.err > offset_err_) offset_err_ = ra.err;
  }
}

Integer LinearForms::error_bound(const std::vector<std::int64_t>& abs_bound) const {
  Integer e = offset_err_;
  for (int i = 0; i < vars_; ++i) {
    std::int64_t b = abs_bound[i] < 0 ? -abs_bound[i] : abs_bound[i];
    e += row_err_[i] * b;
  }
  return e;
}

void LinearForms::evaluate(const std::int64_t* v, Residue* out) const {
  for (int j = 0; j < comps_; ++j) {
    Residue acc = offset_[j];
    for (int i = 0; i < vars_; ++i) acc += mul_small(row(i)[j], v[i]);
    out[j] = acc;
  }
}

Surd LinearForms::exact(const std::int64_t* v, int comp) const {
  Surd acc = exact_offset_[comp];
  for (int i = 0; i < vars_; ++i) {
    if (v[i] != 0) acc += Surd(Rational(v[i])) * coeff_[i][comp];
  }
  return acc;
}

DistanceTest::DistanceTest(const Surd& delta, const Rational& guard,
                           const Integer& err)
    : delta_(delta), guard_(guard) {
  Integer dlo, dhi;
  delta.enclose_scaled(kBits + 8, &dlo, &dhi);
  Rational scale(modulus());
  Rational lo = Rational(dlo, Integer(1) << (kBits + 8)) * scale;
  Rational hi = Rational(dhi, Integer(1) << (kBits + 8)) * scale;
  Rational g = guard * scale;
  Rational e(err);
  t_true_ = clamp_threshold(ceil_rational(lo - g - e));
  t_not_true_ = clamp_threshold(ceil_rational(hi - g + e));
  t_not_false_ = clamp_threshold(ceil_rational(lo + g - e));
  t_false_ = clamp_threshold(ceil_rational(hi + g + e));
}

Decision DistanceTest::exact(const Surd& dist) const {
  Surd diff = dist - delta_;
  if ((diff + guard_).sign() < 0) return Decision::kTrue;
  if ((diff - guard_).sign() >= 0) return Decision::kFalse;
  return Decision::kAmbiguous;
}

}  // namespace ratnear
