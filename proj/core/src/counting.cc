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

#include "ratnear/counting.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ratnear/errors.h"
#include "ratnear/real.h"
#include "ratnear/residue.h"

namespace ratnear {

void check_budget(long double points, const EnumConfig& cfg, const char* what) {
  if (points > static_cast<long double>(cfg.budget)) {
    throw ResourceLimitError(std::string(what) + ": " +
                             std::to_string(static_cast<double>(points)) +
                             " candidate points exceed the budget of " +
                             std::to_string(cfg.budget));
  }
}

namespace {

struct Theta {
  std::vector<Surd> t1;
  std::vector<Surd> t2;
};

Theta split_theta(const ParamMatrix& A, const std::vector<Scalar>& theta) {
  Theta t;
  t.t1.assign(static_cast<std::size_t>(A.d()), Surd());
  t.t2.assign(static_cast<std::size_t>(A.m()), Surd());
  if (theta.empty()) return t;
  if (static_cast<int>(theta.size()) != A.n()) {
    throw DimensionError("theta must have length d + m = " + std::to_string(A.n()));
  }
  for (int i = 0; i < A.d(); ++i) t.t1[i] = theta[i].value();
  for (int j = 0; j < A.m(); ++j) t.t2[j] = theta[A.d() + j].value();
  return t;
}

// theta1 A' - theta2, the constant part of every form.
std::vector<Surd> theta_offset(const ParamMatrix& A, const Theta& t) {
  std::vector<Surd> off(static_cast<std::size_t>(A.m()));
  for (int j = 0; j < A.m(); ++j) {
    Surd acc = -t.t2[j];
    for (int i = 0; i < A.d(); ++i) {
      if (!t.t1[i].is_zero()) acc += t.t1[i] * A.block(i, j).value();
    }
    off[j] = acc;
  }
  return off;
}

// Forms in (q, a_1, ..., a_d).
LinearForms forms_qa(const ParamMatrix& A, const std::vector<Surd>& offset,
                     unsigned bits) {
  std::vector<std::vector<Surd>> coeff(static_cast<std::size_t>(A.d() + 1));
  for (int i = 0; i <= A.d(); ++i) {
    for (int j = 0; j < A.m(); ++j) coeff[i].push_back(A.full()(i, j).value());
  }
  return LinearForms(std::move(coeff), offset, bits);
}

// Forms in (a_1, ..., a_d) at a fixed real q.
LinearForms forms_a(const ParamMatrix& A, const Surd& q,
                    const std::vector<Surd>& offset, unsigned bits) {
  std::vector<std::vector<Surd>> coeff(static_cast<std::size_t>(A.d()));
  for (int i = 0; i < A.d(); ++i) {
    for (int j = 0; j < A.m(); ++j) coeff[i].push_back(A.block(i, j).value());
  }
  std::vector<Surd> off = offset;
  for (int j = 0; j < A.m(); ++j) off[j] += q * A.beta(j).value();
  return LinearForms(std::move(coeff), std::move(off), bits);
}

inline Decision combine(Decision acc, Decision d) {
  if (acc == Decision::kFalse || d == Decision::kFalse) return Decision::kFalse;
  if (acc == Decision::kUndecided || d == Decision::kUndecided) {
    return Decision::kUndecided;
  }
  if (acc == Decision::kAmbiguous || d == Decision::kAmbiguous) {
    return Decision::kAmbiguous;
  }
  return Decision::kTrue;
}

// Verdict for ||L(v)|| < delta over all components, exact semantics.
inline Decision classify_point(const DistanceTest& test, const LinearForms& lf,
                               const std::int64_t* v, const Residue* r) {
  const int m = lf.comps();
  Decision acc = Decision::kTrue;
  for (int j = 0; j < m; ++j) {
    acc = combine(acc, test.classify(fold(r[j])));
    if (acc == Decision::kFalse) return acc;
  }
  if (acc != Decision::kUndecided) return acc;
  acc = Decision::kTrue;
  for (int j = 0; j < m; ++j) {
    Decision d = test.classify(fold(r[j]));
    if (d == Decision::kUndecided) {
      d = test.exact(dist_to_nearest_int(lf.exact(v, j)));
    }
    acc = combine(acc, d);
  }
  return acc;
}

inline double signed_residual(const Residue& r) {
  if ((r.hi >> 63) != 0) return -to_unit_double(negate(r));
  return to_unit_double(r);
}

// Splits [lo, hi] into at most `workers` contiguous chunks and runs
// f(chunk, chunk_lo, chunk_hi) on each, in parallel. Returns the chunk count.
template <class F>
std::size_t run_chunks(std::int64_t lo, std::int64_t hi, int workers, F&& f) {
  if (lo > hi) return 0;
  std::int64_t total = hi - lo + 1;
  std::int64_t w = std::max<std::int64_t>(1, std::min<std::int64_t>(workers, total));
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  std::int64_t start = lo;
  for (std::int64_t c = 0; c < w; ++c) {
    std::int64_t len = total / w + (c < total % w ? 1 : 0);
    ranges.emplace_back(start, start + len - 1);
    start += len;
  }
  if (w == 1) {
    f(std::size_t{0}, ranges[0].first, ranges[0].second);
    return 1;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(ranges.size());
  for (std::size_t c = 0; c < ranges.size(); ++c) {
    threads.emplace_back([&, c] {
      try {
        f(c, ranges[c].first, ranges[c].second);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return ranges.size();
}

struct RawHit {
  std::vector<std::int64_t> v;
  std::vector<double> residual;
};

struct BoxTally {
  std::uint64_t certain = 0;
  std::uint64_t ambiguous = 0;
  std::vector<RawHit> hits;
};

// Counts points of the box lo..hi, splitting the first variable over workers.
BoxTally count_box(const LinearForms& lf, const DistanceTest& test,
                   const std::vector<std::int64_t>& lo,
                   const std::vector<std::int64_t>& hi, int workers,
                   bool collect_hits) {
  if (lf.vars() == 0) {
    BoxTally t;
    std::vector<Residue> r(static_cast<std::size_t>(lf.comps()));
    lf.evaluate(nullptr, r.data());
    Decision d = classify_point(test, lf, nullptr, r.data());
    if (d == Decision::kTrue) {
      ++t.certain;
      if (collect_hits) {
        RawHit h;
        for (const auto& x : r) h.residual.push_back(signed_residual(x));
        t.hits.push_back(std::move(h));
      }
    } else if (d == Decision::kAmbiguous) {
      ++t.ambiguous;
    }
    return t;
  }
  std::vector<BoxTally> parts(static_cast<std::size_t>(std::max(1, workers)));
  std::size_t used = run_chunks(
      lo[0], hi[0], workers,
      [&](std::size_t c, std::int64_t clo, std::int64_t chi) {
        std::vector<std::int64_t> l = lo, h = hi;
        l[0] = clo;
        h[0] = chi;
        BoxTally& t = parts[c];
        const int k = lf.vars();
        const int m = lf.comps();
        odometer(lf, l, h, [&](const std::int64_t* v, const Residue* r) {
          Decision d = classify_point(test, lf, v, r);
          if (d == Decision::kTrue) {
            ++t.certain;
            if (collect_hits) {
              RawHit hit;
              hit.v.assign(v, v + k);
              for (int j = 0; j < m; ++j) hit.residual.push_back(signed_residual(r[j]));
              t.hits.push_back(std::move(hit));
            }
          } else if (d == Decision::kAmbiguous) {
            ++t.ambiguous;
          }
        });
      });
  BoxTally out;
  for (std::size_t c = 0; c < used; ++c) {
    out.certain += parts[c].certain;
    out.ambiguous += parts[c].ambiguous;
    for (auto& h : parts[c].hits) out.hits.push_back(std::move(h));
  }
  return out;
}

long double box_points(std::int64_t Q, int dims) {
  return std::pow(static_cast<long double>(2 * Q - 1), dims);
}

void check_positive(const Scalar& delta, std::int64_t Q) {
  if (Q < 1) throw PreconditionError("Q must be >= 1");
  if (delta.sign() <= 0) throw PreconditionError("delta must be > 0");
}

}  // namespace

CountResult count_N(const CountQuery& query, const EnumConfig& cfg,
                    bool collect_hits) {
  const ParamMatrix& A = query.A;
  check_positive(query.delta, query.Q);
  check_budget(box_points(query.Q, A.d() + 1), cfg, "count_N");
  Theta t = split_theta(A, query.theta);
  LinearForms lf = forms_qa(A, theta_offset(A, t), cfg.fixed_bits());
  const std::int64_t R = query.Q - 1;
  std::vector<std::int64_t> lo(static_cast<std::size_t>(A.d() + 1), -R);
  std::vector<std::int64_t> hi(static_cast<std::size_t>(A.d() + 1), R);
  DistanceTest test(query.delta.value(), cfg.guard(), lf.error_bound(hi));
  BoxTally tally = count_box(lf, test, lo, hi, cfg.workers, collect_hits);
  CountResult out;
  out.count_certain = tally.certain;
  out.count_ambiguous = tally.ambiguous;
  for (auto& h : tally.hits) {
    Hit hit;
    hit.q = h.v[0];
    hit.a.assign(h.v.begin() + 1, h.v.end());
    hit.residual = std::move(h.residual);
    out.hits.push_back(std::move(hit));
  }
  return out;
}

CountResult count_Nprime_at(const ParamMatrix& A, const Scalar& q,
                            std::int64_t Q, const Scalar& delta,
                            const std::vector<Scalar>& theta,
                            const EnumConfig& cfg, bool collect_hits) {
  check_positive(delta, Q);
  check_budget(box_points(Q, A.d()), cfg, "count_Nprime_at");
  Theta t = split_theta(A, theta);
  LinearForms lf = forms_a(A, q.value(), theta_offset(A, t), cfg.fixed_bits());
  const std::int64_t R = Q - 1;
  std::vector<std::int64_t> lo(static_cast<std::size_t>(A.d()), -R);
  std::vector<std::int64_t> hi(static_cast<std::size_t>(A.d()), R);
  DistanceTest test(delta.value(), cfg.guard(), lf.error_bound(hi));
  BoxTally tally = count_box(lf, test, lo, hi, cfg.workers, collect_hits);
  CountResult out;
  out.count_certain = tally.certain;
  out.count_ambiguous = tally.ambiguous;
  for (auto& h : tally.hits) {
    Hit hit;
    hit.a = std::move(h.v);
    hit.residual = std::move(h.residual);
    out.hits.push_back(std::move(hit));
  }
  return out;
}

NprimeResult count_Nprime_over(const ParamMatrix& A,
                               const std::vector<Scalar>& q_set,
                               std::int64_t Q, const Scalar& delta,
                               const std::vector<Scalar>& theta,
                               const EnumConfig& cfg) {
  if (q_set.empty()) throw PreconditionError("q_set must be non-empty");
  check_budget(box_points(Q, A.d()) * static_cast<long double>(q_set.size()),
               cfg, "count_Nprime_over");
  NprimeResult out;
  std::uint64_t best_upper = 0;
  for (std::size_t i = 0; i < q_set.size(); ++i) {
    CountResult r = count_Nprime_at(A, q_set[i], Q, delta, theta, cfg);
    if (i == 0 || r.count_certain > out.count.count_certain) {
      out.count.count_certain = r.count_certain;
      out.best_index = i;
    }
    best_upper = std::max(best_upper, r.count_certain + r.count_ambiguous);
  }
  out.count.count_ambiguous = best_upper - out.count.count_certain;
  return out;
}

ResonantSet resonant_set(const ParamMatrix& A, std::int64_t Q,
                         const Scalar& delta, const Scalar& kappa,
                         const EnumConfig& cfg) {
  check_positive(delta, Q);
  if (kappa.sign() < 0 || compare(kappa.value(), Surd(1)) >= 0) {
    throw PreconditionError("kappa must lie in [0, 1)");
  }
  if (Q > 2147483647) throw ResourceLimitError("resonant_set needs Q < 2^31");
  const int d = A.d();
  Integer kq = (kappa.value() * Surd(Rational(Q))).floor();
  const std::int64_t q_lo = kq.convert_to<std::int64_t>() + 1;
  long double points = static_cast<long double>(Q - q_lo + 1) *
                       std::pow(static_cast<long double>(Q + 1), d);
  check_budget(points, cfg, "resonant_set");
  LinearForms lf = forms_qa(A, std::vector<Surd>(static_cast<std::size_t>(A.m())),
                            cfg.fixed_bits());
  std::vector<std::int64_t> bound(static_cast<std::size_t>(d + 1), Q);
  DistanceTest test(delta.value(), cfg.guard(), lf.error_bound(bound));
  ResonantSet out;
  out.d = d;
  std::vector<ResonantSet> parts(static_cast<std::size_t>(std::max(1, cfg.workers)));
  std::size_t used = run_chunks(
      q_lo, Q, cfg.workers, [&](std::size_t c, std::int64_t clo, std::int64_t chi) {
        ResonantSet& part = parts[c];
        std::vector<std::int64_t> lo(static_cast<std::size_t>(d + 1), 0);
        std::vector<std::int64_t> hi(static_cast<std::size_t>(d + 1), 0);
        for (std::int64_t q = clo; q <= chi; ++q) {
          lo[0] = hi[0] = q;
          for (int i = 1; i <= d; ++i) hi[i] = q;
          odometer(lf, lo, hi, [&](const std::int64_t* v, const Residue* r) {
            Decision dec = classify_point(test, lf, v, r);
            if (dec == Decision::kFalse) return;
            auto& dst = dec == Decision::kTrue ? part.members : part.ambiguous;
            for (int i = 0; i <= d; ++i) dst.push_back(static_cast<std::int32_t>(v[i]));
          });
        }
      });
  for (std::size_t c = 0; c < used; ++c) {
    out.members.insert(out.members.end(), parts[c].members.begin(),
                       parts[c].members.end());
    out.ambiguous.insert(out.ambiguous.end(), parts[c].ambiguous.begin(),
                         parts[c].ambiguous.end());
  }
  return out;
}

std::vector<MultRecord> mult_min_on_line(const Scalar& alpha, const Scalar& beta,
                                         const Scalar& x, std::int64_t Q,
                                         const EnumConfig& cfg) {
  if (Q < 2) throw PreconditionError("mult_min_on_line needs Q >= 2");
  check_budget(static_cast<long double>(Q), cfg, "mult_min_on_line");
  const Surd xs = x.value();
  const Surd ys = alpha.value() * xs + beta.value();
  ResidueApprox rx = residue_approx(xs, cfg.fixed_bits());
  ResidueApprox ry = residue_approx(ys, cfg.fixed_bits());
  Residue ax = mul_small(rx.r, 2);
  Residue ay = mul_small(ry.r, 2);
  std::vector<MultRecord> out;
  double best = 0;
  bool have = false;
  for (std::int64_t q = 2; q <= Q; ++q) {
    Residue fx = fold(ax);
    Residue fy = fold(ay);
    bool zero = false;
    // Within the error bound of an integer: settle exactly.
    Residue ex = residue_from_integer(rx.err * q);
    Residue ey = residue_from_integer(ry.err * q);
    if (!(ex < fx) && dist_to_nearest_int(Surd(Rational(q)) * xs).is_zero()) zero = true;
    if (!(ey < fy) && dist_to_nearest_int(Surd(Rational(q)) * ys).is_zero()) zero = true;
    if (zero) {
      out.push_back({q, 0.0, true});
      return out;
    }
    double lq = log_convention(static_cast<double>(q));
    double value = static_cast<double>(q) * lq * lq * to_unit_double(fx) *
                   to_unit_double(fy);
    if (!have || value < best) {
      best = value;
      have = true;
      out.push_back({q, value, false});
    }
    ax += rx.r;
    ay += ry.r;
  }
  return out;
}

GridCounts count_N_grid(const ParamMatrix& A, const std::vector<std::int64_t>& Qs,
                        const std::vector<Scalar>& deltas,
                        const std::vector<Scalar>& theta,
                        const EnumConfig& cfg) {
  if (Qs.empty() || deltas.empty()) throw PreconditionError("empty grid");
  for (auto Q : Qs) {
    if (Q < 1) throw PreconditionError("Q must be >= 1");
  }
  for (const auto& dl : deltas) {
    if (dl.sign() <= 0) throw PreconditionError("delta must be > 0");
  }
  const std::int64_t Qmax = *std::max_element(Qs.begin(), Qs.end());
  check_budget(box_points(Qmax, A.d() + 1), cfg, "count_N_grid");
  Theta t = split_theta(A, theta);
  LinearForms lf = forms_qa(A, theta_offset(A, t), cfg.fixed_bits());
  const std::int64_t R = Qmax - 1;
  const int k = A.d() + 1;
  std::vector<std::int64_t> lo(static_cast<std::size_t>(k), -R);
  std::vector<std::int64_t> hi(static_cast<std::size_t>(k), R);
  Integer err = lf.error_bound(hi);
  std::vector<DistanceTest> tests;
  for (const auto& dl : deltas) tests.emplace_back(dl.value(), cfg.guard(), err);
  const std::size_t K = deltas.size();
  const std::size_t S = static_cast<std::size_t>(Qmax);
  // hist[(s * K + k) * 2 + {0: certain, 1: ambiguous}], s = sup norm
  std::vector<std::vector<std::uint64_t>> parts(
      static_cast<std::size_t>(std::max(1, cfg.workers)));
  std::size_t used = run_chunks(
      -R, R, cfg.workers, [&](std::size_t c, std::int64_t clo, std::int64_t chi) {
        auto& hist = parts[c];
        hist.assign(S * K * 2, 0);
        std::vector<std::int64_t> l = lo, h = hi;
        l[0] = clo;
        h[0] = chi;
        odometer(lf, l, h, [&](const std::int64_t* v, const Residue* r) {
          std::int64_t s = 0;
          for (int i = 0; i < k; ++i) s = std::max(s, v[i] < 0 ? -v[i] : v[i]);
          std::uint64_t* row = &hist[static_cast<std::size_t>(s) * K * 2];
          for (std::size_t kk = 0; kk < K; ++kk) {
            Decision dec = classify_point(tests[kk], lf, v, r);
            if (dec == Decision::kTrue) {
              ++row[kk * 2];
            } else if (dec == Decision::kAmbiguous) {
              ++row[kk * 2 + 1];
            }
          }
        });
      });
  std::vector<std::uint64_t> hist(S * K * 2, 0);
  for (std::size_t c = 0; c < used; ++c) {
    for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += parts[c][i];
  }
  GridCounts out;
  out.Qs = Qs;
  out.deltas = deltas;
  for (auto Q : Qs) {
    std::vector<std::uint64_t> cert(K, 0), amb(K, 0);
    for (std::int64_t s = 0; s < Q; ++s) {
      for (std::size_t kk = 0; kk < K; ++kk) {
        cert[kk] += hist[(static_cast<std::size_t>(s) * K + kk) * 2];
        amb[kk] += hist[(static_cast<std::size_t>(s) * K + kk) * 2 + 1];
      }
    }
    out.certain.push_back(std::move(cert));
    out.ambiguous.push_back(std::move(amb));
  }
  return out;
}

GridCounts count_Nprime_grid(const ParamMatrix& A,
                             const std::vector<std::int64_t>& Qs,
                             const std::vector<Scalar>& deltas,
                             const std::vector<Scalar>& theta,
                             const EnumConfig& cfg) {
  if (Qs.empty() || deltas.empty()) throw PreconditionError("empty grid");
  for (auto Q : Qs) {
    if (Q < 1) throw PreconditionError("Q must be >= 1");
  }
  for (const auto& dl : deltas) {
    if (dl.sign() <= 0) throw PreconditionError("delta must be > 0");
  }
  const std::int64_t Qmax = *std::max_element(Qs.begin(), Qs.end());
  check_budget(box_points(Qmax, A.d()) * static_cast<long double>(Qmax + 1), cfg,
               "count_Nprime_grid");
  Theta t = split_theta(A, theta);
  LinearForms lf = forms_qa(A, theta_offset(A, t), cfg.fixed_bits());
  const int k = A.d() + 1;
  const std::int64_t R = Qmax - 1;
  std::vector<std::int64_t> bound(static_cast<std::size_t>(k), R);
  bound[0] = Qmax;
  Integer err = lf.error_bound(bound);
  std::vector<DistanceTest> tests;
  for (const auto& dl : deltas) tests.emplace_back(dl.value(), cfg.guard(), err);
  const std::size_t K = deltas.size();
  const std::size_t S = static_cast<std::size_t>(Qmax);
  const std::size_t NQ = Qs.size();

  struct Best {
    std::vector<std::uint64_t> certain;  // NQ * K
    std::vector<std::uint64_t> upper;
  };
  std::vector<Best> parts(static_cast<std::size_t>(std::max(1, cfg.workers)));
  std::size_t used = run_chunks(
      0, Qmax, cfg.workers, [&](std::size_t c, std::int64_t clo, std::int64_t chi) {
        Best& best = parts[c];
        best.certain.assign(NQ * K, 0);
        best.upper.assign(NQ * K, 0);
        std::vector<std::uint64_t> hist(S * K * 2);
        std::vector<std::int64_t> lo(static_cast<std::size_t>(k), -R);
        std::vector<std::int64_t> hi(static_cast<std::size_t>(k), R);
        for (std::int64_t q = clo; q <= chi; ++q) {
          std::fill(hist.begin(), hist.end(), 0);
          lo[0] = hi[0] = q;
          odometer(lf, lo, hi, [&](const std::int64_t* v, const Residue* r) {
            std::int64_t s = 0;
            for (int i = 1; i < k; ++i) s = std::max(s, v[i] < 0 ? -v[i] : v[i]);
            std::uint64_t* row = &hist[static_cast<std::size_t>(s) * K * 2];
            for (std::size_t kk = 0; kk < K; ++kk) {
              Decision dec = classify_point(tests[kk], lf, v, r);
              if (dec == Decision::kTrue) {
                ++row[kk * 2];
              } else if (dec == Decision::kAmbiguous) {
                ++row[kk * 2 + 1];
              }
            }
          });
          for (std::size_t qi = 0; qi < NQ; ++qi) {
            if (q > Qs[qi]) continue;
            for (std::size_t kk = 0; kk < K; ++kk) {
              std::uint64_t cert = 0, amb = 0;
              for (std::int64_t s = 0; s < Qs[qi]; ++s) {
                cert += hist[(static_cast<std::size_t>(s) * K + kk) * 2];
                amb += hist[(static_cast<std::size_t>(s) * K + kk) * 2 + 1];
              }
              std::size_t idx = qi * K + kk;
              best.certain[idx] = std::max(best.certain[idx], cert);
              best.upper[idx] = std::max(best.upper[idx], cert + amb);
            }
          }
        }
      });
  GridCounts out;
  out.Qs = Qs;
  out.deltas = deltas;
  out.certain.assign(NQ, std::vector<std::uint64_t>(K, 0));
  out.ambiguous.assign(NQ, std::vector<std::uint64_t>(K, 0));
  for (std::size_t qi = 0; qi < NQ; ++qi) {
    for (std::size_t kk = 0; kk < K; ++kk) {
      std::uint64_t cert = 0, upper = 0;
      for (std::size_t c = 0; c < used; ++c) {
        cert = std::max(cert, parts[c].certain[qi * K + kk]);
        upper = std::max(upper, parts[c].upper[qi * K + kk]);
      }
      out.certain[qi][kk] = cert;
      out.ambiguous[qi][kk] = upper - cert;
    }
  }
  return out;
}

std::uint64_t count_exact_rational_points(const ParamMatrix& A, std::int64_t Q,
                                          const std::vector<Scalar>& theta,
                                          const EnumConfig& cfg) {
  if (Q < 1) throw PreconditionError("Q must be >= 1");
  check_budget(box_points(Q, A.d() + 1), cfg, "count_exact_rational_points");
  Theta t = split_theta(A, theta);
  LinearForms lf = forms_qa(A, theta_offset(A, t), cfg.fixed_bits());
  const std::int64_t R = Q - 1;
  const int k = A.d() + 1;
  std::vector<std::int64_t> lo(static_cast<std::size_t>(k), -R);
  std::vector<std::int64_t> hi(static_cast<std::size_t>(k), R);
  Residue err = residue_from_integer(lf.error_bound(hi));
  std::vector<std::uint64_t> parts(static_cast<std::size_t>(std::max(1, cfg.workers)), 0);
  std::size_t used = run_chunks(
      -R, R, cfg.workers, [&](std::size_t c, std::int64_t clo, std::int64_t chi) {
        std::vector<std::int64_t> l = lo, h = hi;
        l[0] = clo;
        h[0] = chi;
        odometer(lf, l, h, [&](const std::int64_t* v, const Residue* r) {
          for (int j = 0; j < lf.comps(); ++j) {
            if (err < fold(r[j])) return;
          }
          for (int j = 0; j < lf.comps(); ++j) {
            if (!dist_to_nearest_int(lf.exact(v, j)).is_zero()) return;
          }
          ++parts[c];
        });
      });
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < used; ++c) total += parts[c];
  return total;
}

}  // namespace ratnear
