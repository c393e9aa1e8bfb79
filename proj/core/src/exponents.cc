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

#include "ratnear/exponents.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "ratnear/errors.h"
#include "ratnear/residue.h"

namespace ratnear {
namespace {

enum : std::uint8_t { kUnset = 0, kSet = 1, kZero = 2 };

// Smallest folded error per sup norm t in [1, Q].
struct NormMinima {
  int cols = 0;
  std::vector<Residue> val;
  std::vector<std::int64_t> q;
  std::vector<std::uint8_t> state;
  std::uint64_t kernel = 0;

  void init(int c, std::int64_t Q) {
    cols = c;
    val.assign(static_cast<std::size_t>(Q + 1), Residue{});
    q.assign(static_cast<std::size_t>(Q + 1) * c, 0);
    state.assign(static_cast<std::size_t>(Q + 1), kUnset);
  }
  const std::int64_t* q_at(std::int64_t t) const {
    return &q[static_cast<std::size_t>(t) * cols];
  }
};

class Comparator {
 public:
  Comparator(const LinearForms& lf, const Integer& err)
      : lf_(lf), slack_(residue_from_integer(err * 2)) {
    for (int i = 0; i < lf.vars(); ++i) {
      bool integral = true;
      for (int j = 0; j < lf.comps(); ++j) {
        const Surd& c = lf.coeff(i, j);
        integral = integral && c.is_rational() &&
                   boost::multiprecision::denominator(c.rational_part()) == 1;
      }
      integral_var_.push_back(integral);
    }
  }

  // a and +-b agree modulo variables with integer coefficients, so their
  // images agree mod 1 up to sign and the errors are equal.
  bool congruent(const std::int64_t* a, const std::int64_t* b) const {
    bool plus = true;
    bool minus = true;
    for (int i = 0; i < lf_.vars(); ++i) {
      if (integral_var_[static_cast<std::size_t>(i)]) continue;
      plus = plus && a[i] == b[i];
      minus = minus && a[i] == -b[i];
    }
    return plus || minus;
  }

  Surd exact_err(const std::int64_t* v) const {
    Surd best;
    for (int j = 0; j < lf_.comps(); ++j) {
      Surd d = dist_to_nearest_int(lf_.exact(v, j));
      if (j == 0 || compare(d, best) > 0) best = d;
    }
    return best;
  }

  // -1, 0, 1 comparing the true errors of two points.
  int compare_err(const Residue& a, const std::int64_t* qa, const Residue& b,
                  const std::int64_t* qb) const {
    Residue a_hi = a;
    a_hi += slack_;
    if (a_hi < b) return -1;
    Residue b_hi = b;
    b_hi += slack_;
    if (b_hi < a) return 1;
    if (congruent(qa, qb)) return 0;
    return compare(exact_err(qa), exact_err(qb));
  }

  bool lex_less(const std::int64_t* a, const std::int64_t* b) const {
    return std::lexicographical_compare(a, a + lf_.vars(), b, b + lf_.vars());
  }

  // Whether candidate (val, q, zero) should replace the stored entry.
  bool better(const Residue& val, const std::int64_t* qv, bool zero,
              const NormMinima& cur, std::int64_t t) const {
    std::uint8_t st = cur.state[t];
    if (st == kUnset) return true;
    if (zero || st == kZero) {
      if (zero != (st == kZero)) return zero;
      return lex_less(qv, cur.q_at(t));
    }
    int c = compare_err(val, qv, cur.val[t], cur.q_at(t));
    if (c != 0) return c < 0;
    return lex_less(qv, cur.q_at(t));
  }

 private:
  const LinearForms& lf_;
  Residue slack_;
  std::vector<bool> integral_var_;
};

void store(NormMinima& nm, std::int64_t t, const Residue& val,
           const std::int64_t* qv, bool zero) {
  nm.val[t] = val;
  std::copy(qv, qv + nm.cols, nm.q.begin() + static_cast<std::ptrdiff_t>(t) * nm.cols);
  nm.state[t] = zero ? kZero : kSet;
}

LinearForms forms_for(const Matrix& A, unsigned bits) {
  std::vector<std::vector<Surd>> coeff(static_cast<std::size_t>(A.cols()));
  for (int i = 0; i < A.cols(); ++i) {
    for (int j = 0; j < A.rows(); ++j) coeff[i].push_back(A(j, i).value());
  }
  return LinearForms(std::move(coeff), std::vector<Surd>(static_cast<std::size_t>(A.rows())),
                     bits);
}

NormMinima norm_minima(const Matrix& A, std::int64_t Q, const EnumConfig& cfg,
                       ZeroPolicy policy, const LinearForms& lf, const Integer& err) {
  const int m = A.cols();
  const int rows = A.rows();
  check_budget(std::pow(static_cast<long double>(2 * Q + 1), m) / 2, cfg,
               "best_approx_records");
  const Comparator cmp(lf, err);
  const Residue err_r = residue_from_integer(err);

  const int workers = std::max(1, cfg.workers);
  const std::int64_t total = Q + 1;  // q_0 in [0, Q]
  const std::int64_t w = std::min<std::int64_t>(workers, total);
  std::vector<NormMinima> parts(static_cast<std::size_t>(w));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(w));
  auto work = [&](std::int64_t c) {
    try {
      std::int64_t len = total / w;
      std::int64_t extra = total % w;
      std::int64_t start = c * len + std::min<std::int64_t>(c, extra);
      std::int64_t stop = start + len + (c < extra ? 1 : 0) - 1;
      NormMinima& nm = parts[c];
      nm.init(m, Q);
      std::vector<std::int64_t> lo(static_cast<std::size_t>(m), -Q);
      std::vector<std::int64_t> hi(static_cast<std::size_t>(m), Q);
      lo[0] = start;
      hi[0] = stop;
      odometer(lf, lo, hi, [&](const std::int64_t* v, const Residue* r) {
        std::int64_t t = 0;
        int first = -1;
        for (int i = 0; i < m; ++i) {
          std::int64_t a = v[i] < 0 ? -v[i] : v[i];
          if (a > t) t = a;
          if (first < 0 && v[i] != 0) first = i;
        }
        if (first < 0 || v[first] < 0) return;  // zero or not canonical
        Residue val = fold(r[0]);
        for (int j = 1; j < rows; ++j) {
          Residue f = fold(r[j]);
          if (val < f) val = f;
        }
        bool zero = false;
        if (!(err_r < val)) {
          zero = cmp.exact_err(v).is_zero();
          if (zero && policy == ZeroPolicy::kSkipKernel) {
            ++nm.kernel;
            return;
          }
        }
        if (cmp.better(val, v, zero, nm, t)) store(nm, t, val, v, zero);
      });
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (w == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::int64_t c = 0; c < w; ++c) threads.emplace_back(work, c);
    for (auto& th : threads) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  NormMinima out = std::move(parts[0]);
  for (std::size_t c = 1; c < parts.size(); ++c) {
    const NormMinima& p = parts[c];
    out.kernel += p.kernel;
    for (std::int64_t t = 1; t <= Q; ++t) {
      if (p.state[t] == kUnset) continue;
      if (cmp.better(p.val[t], p.q_at(t), p.state[t] == kZero, out, t)) {
        store(out, t, p.val[t], p.q_at(t), p.state[t] == kZero);
      }
    }
  }
  return out;
}

}  // namespace

namespace {

struct Prepared {
  LinearForms lf;
  Integer err;
};

Prepared prepare(const Matrix& A, std::int64_t Q, const EnumConfig& cfg) {
  if (Q < 1) throw PreconditionError("Q_max must be >= 1");
  if (A.rows() < 1 || A.cols() < 1) throw DimensionError("empty matrix");
  Prepared p{forms_for(A, cfg.fixed_bits()), Integer(0)};
  p.err = p.lf.error_bound(std::vector<std::int64_t>(static_cast<std::size_t>(A.cols()), Q));
  return p;
}

double log_ratio(double err, double norm) {
  return std::log(1.0 / err) / std::log(norm);
}

}  // namespace

RecordSearch best_approx_records(const Matrix& A, std::int64_t Q_max,
                                 const EnumConfig& cfg, ZeroPolicy policy) {
  Prepared p = prepare(A, Q_max, cfg);
  NormMinima nm = norm_minima(A, Q_max, cfg, policy, p.lf, p.err);
  const Comparator cmp(p.lf, p.err);
  RecordSearch out;
  out.Q_max = Q_max;
  out.kernel_skipped = nm.kernel;
  std::int64_t cur = 0;
  for (std::int64_t t = 1; t <= Q_max; ++t) {
    if (nm.state[t] == kUnset) continue;
    bool zero = nm.state[t] == kZero;
    bool take = cur == 0;
    if (!take) {
      if (zero) {
        take = true;
      } else {
        take = cmp.compare_err(nm.val[t], nm.q_at(t), nm.val[cur], nm.q_at(cur)) < 0;
      }
    }
    if (!take) continue;
    cur = t;
    ApproxRecord rec;
    rec.q.assign(nm.q_at(t), nm.q_at(t) + A.cols());
    rec.norm_q = t;
    rec.exact_zero = zero;
    if (zero) {
      rec.err = Scalar(0);
      rec.err_double = 0;
    } else {
      rec.err = Scalar::from_surd(cmp.exact_err(nm.q_at(t)));
      rec.err_double = rec.err.to_double();
    }
    out.records.push_back(std::move(rec));
    if (zero) {
      out.exact_zero = true;
      break;
    }
  }
  return out;
}

ExponentEstimate estimate_omega(const RecordSearch& search, std::int64_t cutoff) {
  ExponentEstimate est;
  est.cutoff = cutoff;
  est.Q_max = search.Q_max;
  est.records = search.records;
  est.kernel_skipped = search.kernel_skipped;
  if (search.exact_zero) {
    est.infinite = true;
    est.omega_sup = std::numeric_limits<double>::infinity();
    est.omega_slope = std::numeric_limits<double>::infinity();
    est.omega_tail = std::numeric_limits<double>::infinity();
    return est;
  }
  std::vector<const ApproxRecord*> used;
  for (const auto& r : search.records) {
    if (r.norm_q >= cutoff && r.norm_q >= 2) used.push_back(&r);
  }
  if (used.size() < 3) {
    throw InsufficientDataError("need at least 3 records with |q| >= cutoff, have " +
                                std::to_string(used.size()));
  }
  est.records_used = used.size();
  double sup = -std::numeric_limits<double>::infinity();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto* r : used) {
    double x = std::log(static_cast<double>(r->norm_q));
    double y = std::log(r->err_double);
    sup = std::max(sup, -y / x);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(used.size());
  double denom = k * sxx - sx * sx;
  est.omega_sup = sup;
  est.omega_slope = denom > 0 ? -(k * sxy - sx * sy) / denom : 0.0;
  est.omega_tail = log_ratio(search.records.back().err_double,
                             static_cast<double>(search.Q_max));
  return est;
}

double estimate_omega_log(const std::vector<ApproxRecord>& records, double omega,
                          std::int64_t cutoff) {
  if (!std::isfinite(omega)) throw PreconditionError("omega must be finite");
  double sup = -std::numeric_limits<double>::infinity();
  std::size_t n = 0;
  for (const auto& r : records) {
    if (r.norm_q < cutoff || r.norm_q < 2) continue;
    if (r.exact_zero) throw PreconditionError("exact-zero record has no log exponent");
    double q = static_cast<double>(r.norm_q);
    double loglog = log_convention(log_convention(q));
    double v = (omega * std::log(q) + std::log(r.err_double)) / -loglog;
    sup = std::max(sup, v);
    ++n;
  }
  if (n < 3) {
    throw InsufficientDataError("need at least 3 records with |q| >= cutoff, have " +
                                std::to_string(n));
  }
  return sup;
}

ExponentEstimate estimate_sigma(const ParamMatrix& A, std::int64_t Q_max,
                                std::int64_t cutoff, const EnumConfig& cfg,
                                ZeroPolicy policy) {
  return estimate_omega(best_approx_records(A.full().transpose(), Q_max, cfg, policy),
                        cutoff);
}

C0Certificate badly_approx_constant(const Matrix& A, const ApproxFunction& phi,
                                    std::int64_t Q_max, const EnumConfig& cfg,
                                    ZeroPolicy policy) {
  Prepared p = prepare(A, Q_max, cfg);
  NormMinima nm = norm_minima(A, Q_max, cfg, policy, p.lf, p.err);
  C0Certificate cert;
  cert.Q_max = Q_max;
  cert.phi = phi;
  cert.kernel_skipped = nm.kernel;
  // Screen in double, then settle the near-minimal norms at working precision.
  std::vector<double> ratio(static_cast<std::size_t>(Q_max + 1),
                            std::numeric_limits<double>::infinity());
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t t = 1; t <= Q_max; ++t) {
    if (nm.state[t] == kZero) {
      throw RationalDependenceError(
          "||A q|| = 0 exactly at |q| = " + std::to_string(t) +
          "; no badly-approximable constant exists");
    }
    if (nm.state[t] == kUnset) continue;
    ratio[t] = to_unit_double(nm.val[t]) / phi.eval(static_cast<double>(t));
    best = std::min(best, ratio[t]);
  }
  Real c0 = 1;
  cert.capped = true;
  const Real scale = boost::multiprecision::ldexp(Real(1), 192);
  for (std::int64_t t = 1; t <= Q_max; ++t) {
    if (!(ratio[t] <= best * (1 + 1e-6) + 1e-300)) continue;
    // Certified lower bound of the true error at this norm.
    Integer lo = residue_to_integer(nm.val[t]) - p.err;
    if (lo < 0) lo = 0;
    Real err_lo = to_real(Rational(lo)) / scale;
    Real r = err_lo / phi(Real(t));
    if (r < c0) {
      c0 = r;
      cert.capped = false;
      cert.argmin_norm = t;
    }
  }
  if (!cert.capped) {
    // Absorb the rounding of the final division.
    c0 *= 1 - boost::multiprecision::ldexp(Real(1), -static_cast<int>(working_precision_bits()) + 8);
  }
  cert.c0 = c0;
  return cert;
}

GuardedBool check_transference(const Scalar& omega, const Scalar& sigma, int n,
                               const Scalar& tol) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  const Surd N{Rational(n)};
  if (compare(omega.value(), N) < 0) throw PreconditionError("omega must be >= n");
  if (compare(sigma.value() * N, Surd(1)) < 0) {
    throw PreconditionError("sigma must be >= 1/n");
  }
  Surd lower = omega.value() / (Surd(Rational(n - 1)) * omega.value() + N) - tol.value();
  Surd upper = (omega.value() - N + Surd(1)) / N + tol.value();
  bool ok = compare(lower, sigma.value()) <= 0 && compare(sigma.value(), upper) <= 0;
  return ok ? GuardedBool::kTrue : GuardedBool::kFalse;
}

ParamMatrix shift_matrix(const ParamMatrix& A, const std::vector<std::int64_t>& k) {
  if (static_cast<int>(k.size()) != A.d()) {
    throw DimensionError("shift vector must have length d = " + std::to_string(A.d()));
  }
  Matrix full = A.full();
  for (int j = 0; j < A.m(); ++j) {
    Surd acc = A.beta(j).value();
    bool changed = false;
    for (int i = 0; i < A.d(); ++i) {
      if (k[i] == 0) continue;
      acc += Surd(Rational(k[i])) * A.block(i, j).value();
      changed = true;
    }
    if (changed) full.at(0, j) = Scalar::from_surd(acc);
  }
  return ParamMatrix(std::move(full), A.label());
}

Matrix row_matrix(const std::vector<Scalar>& y) {
  return Matrix(1, static_cast<int>(y.size()), y);
}

Matrix column_matrix(const std::vector<Scalar>& y) {
  return Matrix(static_cast<int>(y.size()), 1, y);
}

}  // namespace ratnear
