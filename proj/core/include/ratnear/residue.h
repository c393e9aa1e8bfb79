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

#ifndef RATNEAR_RESIDUE_H_
#define RATNEAR_RESIDUE_H_

#include <cstdint>
#include <vector>

#include "ratnear/scalar.h"
#include "ratnear/surd.h"

namespace ratnear {

// A real number modulo 1 in units of 2^-192. Addition wraps, which is exactly
// reduction mod 1.
struct Residue {
  unsigned __int128 lo = 0;
  std::uint64_t hi = 0;
};

inline Residue& operator+=(Residue& a, const Residue& b) {
  unsigned __int128 s = a.lo + b.lo;
  a.hi += b.hi + (s < a.lo ? 1 : 0);
  a.lo = s;
  return a;
}

inline Residue& operator-=(Residue& a, const Residue& b) {
  unsigned __int128 s = a.lo - b.lo;
  a.hi -= b.hi + (a.lo < b.lo ? 1 : 0);
  a.lo = s;
  return a;
}

inline Residue negate(const Residue& a) {
  Residue z;
  z -= a;
  return z;
}

inline bool operator<(const Residue& a, const Residue& b) {
  return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
}
inline bool operator==(const Residue& a, const Residue& b) {
  return a.hi == b.hi && a.lo == b.lo;
}

// Distance to the nearest integer, as a value in [0, 2^191].
inline Residue fold(const Residue& a) {
  return (a.hi >> 63) != 0 ? negate(a) : a;
}

// Value in [0, 1) as a double.
inline double to_unit_double(const Residue& a) {
  return static_cast<double>(a.hi) * 0x1p-64 +
         static_cast<double>(static_cast<std::uint64_t>(a.lo >> 64)) * 0x1p-128;
}

Residue mul_small(const Residue& a, std::int64_t k);
Residue residue_from_integer(const Integer& v);  // v mod 2^192
Integer residue_to_integer(const Residue& a);    // in [0, 2^192)

// Fixed-point image of a number mod 1 with an error bound in ulps:
// |x * 2^192 - (r + k * 2^192)| <= err for some integer k.
struct ResidueApprox {
  Residue r;
  Integer err;
};

// precision in [64, 192] fractional bits; the low bits beyond precision are
// cleared and accounted for in err.
ResidueApprox residue_approx(const Surd& x, unsigned precision);

// A family of comps linear forms in vars integer variables,
//   L_j(v) = offset_j + sum_i v_i * coeff(i, j),
// evaluated mod 1 in fixed point with exact fallback.
class LinearForms {
 public:
  LinearForms() = default;
  LinearForms(std::vector<std::vector<Surd>> coeff, std::vector<Surd> offset,
              unsigned precision);

  int vars() const { return vars_; }
  int comps() const { return comps_; }
  const Residue* row(int i) const { return &rows_[static_cast<std::size_t>(i) * comps_]; }
  const Residue* offset() const { return offset_.data(); }
  const Surd& coeff(int var, int comp) const {
    return coeff_[static_cast<std::size_t>(var)][static_cast<std::size_t>(comp)];
  }

  // Bound (ulps) on the fixed-point error of every component, for points
  // with |v_i| <= abs_bound[i].
  Integer error_bound(const std::vector<std::int64_t>& abs_bound) const;

  void evaluate(const std::int64_t* v, Residue* out) const;
  Surd exact(const std::int64_t* v, int comp) const;

 private:
  int vars_ = 0;
  int comps_ = 0;
  std::vector<std::vector<Surd>> coeff_;
  std::vector<Surd> exact_offset_;
  std::vector<Residue> rows_;
  std::vector<Residue> offset_;
  std::vector<Integer> row_err_;
  Integer offset_err_;
};

enum class Decision : std::uint8_t { kFalse, kTrue, kAmbiguous, kUndecided };

inline GuardedBool to_guarded(Decision d) {
  switch (d) {
    case Decision::kTrue:
      return GuardedBool::kTrue;
    case Decision::kFalse:
      return GuardedBool::kFalse;
    default:
      return GuardedBool::kAmbiguous;
  }
}

// Decides ||x|| < delta with guard band g from a folded fixed-point distance
// carrying error at most err ulps. Semantics are exact: True iff
// ||x|| < delta - g, False iff ||x|| >= delta + g, Ambiguous otherwise.
// kUndecided means the fixed-point value cannot tell and exact() must be used.
class DistanceTest {
 public:
  DistanceTest() = default;
  DistanceTest(const Surd& delta, const Rational& guard, const Integer& err);

  Decision classify(const Residue& folded) const {
    if (folded < t_true_) return Decision::kTrue;
    if (!(folded < t_false_)) return Decision::kFalse;
    if (!(folded < t_not_true_) && folded < t_not_false_) {
      return Decision::kAmbiguous;
    }
    return Decision::kUndecided;
  }

  // Exact verdict from the exact distance.
  Decision exact(const Surd& dist) const;

  const Surd& delta() const { return delta_; }

 private:
  Surd delta_;
  Surd guard_;
  Residue t_true_;      // folded < t_true_      => True
  Residue t_not_true_;  // folded >= t_not_true_ => not True
  Residue t_not_false_; // folded < t_not_false_ => not False
  Residue t_false_;     // folded >= t_false_    => False
};

// Visits every integer point lo <= v <= hi (componentwise) in lexicographic
// order with v[0] outermost, passing the fixed-point residues of all forms.
template <class Visit>
void odometer(const LinearForms& f, const std::vector<std::int64_t>& lo,
              const std::vector<std::int64_t>& hi, Visit&& visit) {
  const int k = f.vars();
  const int m = f.comps();
  for (int i = 0; i < k; ++i) {
    if (lo[i] > hi[i]) return;
  }
  std::vector<std::int64_t> v(lo.begin(), lo.end());
  std::vector<Residue> r(static_cast<std::size_t>(m));
  f.evaluate(v.data(), r.data());
  std::vector<Residue> wrap(static_cast<std::size_t>(k) * m);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < m; ++j) {
      wrap[static_cast<std::size_t>(i) * m + j] =
          mul_small(f.row(i)[j], hi[i] - lo[i]);
    }
  }
  for (;;) {
    visit(static_cast<const std::int64_t*>(v.data()),
          static_cast<const Residue*>(r.data()));
    int i = k - 1;
    for (; i >= 0; --i) {
      if (v[i] < hi[i]) {
        ++v[i];
        const Residue* row = f.row(i);
        for (int j = 0; j < m; ++j) r[j] += row[j];
        break;
      }
      v[i] = lo[i];
      const Residue* w = &wrap[static_cast<std::size_t>(i) * m];
      for (int j = 0; j < m; ++j) r[j] -= w[j];
    }
    if (i < 0) return;
  }
}

}  // namespace ratnear

#endif  // RATNEAR_RESIDUE_H_
