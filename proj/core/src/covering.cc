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

#include "ratnear/covering.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "ratnear/bounds.h"
#include "ratnear/counting.h"
#include "ratnear/errors.h"

namespace ratnear {
namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// |t|^d * Q * delta^m < 1, i.e. |t| < (Q^{1/d} delta^{m/d})^{-1}.
bool within_box_radius(const Surd& t, int d, const Surd& q_delta_m) {
  return compare(t.abs().pow(d) * q_delta_m, Surd(1)) < 0;
}

Surd nearest_integer(const Surd& v) {
  return Surd(Rational(Surd(v + Surd(Rational(1, 2))).floor()));
}

void check_witness_pre(const ParamMatrix& A, const std::vector<Scalar>& x,
                       std::int64_t Q, const Scalar& delta) {
  if (static_cast<int>(x.size()) != A.d()) {
    throw DimensionError("x must have length d");
  }
  if (Q < 1) throw PreconditionError("Q must be >= 1");
  for (const auto& xi : x) {
    if (xi.sign() < 0 || compare(xi.value(), Surd(1)) > 0) {
      throw PreconditionError("x must lie in [0,1]^d");
    }
  }
  if (compare(delta.value(), Surd(1)) > 0 ||
      compare(delta.value().pow(A.m()) * Surd(Q), Surd(1)) < 0) {
    throw PreconditionError("needs Q^(-1/m) <= delta <= 1");
  }
}

}  // namespace

std::optional<Witness> minkowski_witness(const ParamMatrix& A,
                                         const std::vector<Scalar>& x,
                                         std::int64_t Q, const Scalar& delta) {
  check_witness_pre(A, x, Q, delta);
  const int d = A.d();
  const int m = A.m();
  const Surd qdm = delta.value().pow(m) * Surd(Q);
  const double r = std::pow(qdm.to_double(), -1.0 / d);
  const double dd = delta.to_double();
  constexpr double kSlack = 1e-9;
  std::vector<double> xd(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) xd[i] = x[i].to_double();
  std::vector<double> beta(static_cast<std::size_t>(m));
  std::vector<double> alpha(static_cast<std::size_t>(d * m));
  for (int j = 0; j < m; ++j) {
    beta[j] = A.beta(j).to_double();
    for (int i = 0; i < d; ++i) alpha[i * m + j] = A.block(i, j).to_double();
  }
  std::vector<std::vector<std::int64_t>> cand(static_cast<std::size_t>(d));
  std::vector<std::size_t> idx(static_cast<std::size_t>(d));
  std::vector<std::int64_t> a(static_cast<std::size_t>(d));
  for (std::int64_t q = 1; q <= Q; ++q) {
    bool any = true;
    for (int i = 0; i < d && any; ++i) {
      cand[i].clear();
      const double t = static_cast<double>(q) * xd[i];
      const auto f = static_cast<std::int64_t>(std::floor(t));
      for (std::int64_t ai = f - 1; ai <= f + 2; ++ai) {
        if (ai < 0 || ai > q) continue;
        if (std::fabs(t - static_cast<double>(ai)) < r + kSlack) cand[i].push_back(ai);
      }
      any = !cand[i].empty();
    }
    if (!any) continue;
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      for (int i = 0; i < d; ++i) a[i] = cand[i][idx[i]];
      bool screen = true;
      for (int j = 0; j < m && screen; ++j) {
        double v = static_cast<double>(q) * beta[j];
        for (int i = 0; i < d; ++i) v += static_cast<double>(a[i]) * alpha[i * m + j];
        screen = std::fabs(v - std::nearbyint(v)) < dd + kSlack * (1 + std::fabs(v));
      }
      if (screen) {
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
          ok = within_box_radius(Surd(q) * x[i].value() - Surd(a[i]), d, qdm);
        }
        Witness w;
        w.q = q;
        w.a = a;
        for (int j = 0; j < m && ok; ++j) {
          Surd v = Surd(q) * A.beta(j).value();
          for (int i = 0; i < d; ++i) v += Surd(a[i]) * A.block(i, j).value();
          Surd b = nearest_integer(v);
          ok = compare((v - b).abs(), delta.value()) < 0;
          w.b.push_back(b.rational_part().convert_to<std::int64_t>());
        }
        if (ok) return w;
      }
      int i = d - 1;
      while (i >= 0 && ++idx[i] == cand[i].size()) {
        idx[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  return std::nullopt;
}

GuardedBool verify_witness(const ParamMatrix& A, const std::vector<Scalar>& x,
                           std::int64_t Q, const Scalar& delta, const Witness& w,
                           const EnumConfig& cfg) {
  const int d = A.d();
  const int m = A.m();
  if (static_cast<int>(w.a.size()) != d || static_cast<int>(w.b.size()) != m ||
      static_cast<int>(x.size()) != d) {
    return GuardedBool::kFalse;
  }
  if (w.q < 1 || w.q > Q) return GuardedBool::kFalse;
  for (auto ai : w.a) {
    if (ai < 0 || ai > w.q) return GuardedBool::kFalse;
  }
  const unsigned bits = cfg.precision.bits;
  const Rational guard = cfg.guard();
  GuardedBool verdict = GuardedBool::kTrue;
  auto merge = [&](GuardedBool g) {
    if (g == GuardedBool::kFalse) {
      verdict = GuardedBool::kFalse;
    } else if (g == GuardedBool::kAmbiguous && verdict == GuardedBool::kTrue) {
      verdict = GuardedBool::kAmbiguous;
    }
  };
  const Scalar qs(static_cast<long>(w.q));
  Scalar scale(static_cast<long>(Q));
  for (int j = 0; j < m; ++j) scale = scale * delta;
  const Interval one{Rational(1), Rational(1)};
  for (int i = 0; i < d; ++i) {
    Scalar t = qs * x[i] - Scalar(static_cast<long>(w.a[i]));
    Scalar p = scale;
    for (int k = 0; k < d; ++k) p = p * t;
    Interval e = p.enclose(bits);
    if (e.lo < 0) e = Interval{Rational(-e.hi), Rational(-e.lo)};
    merge(guarded_less(e, one, guard));
  }
  const Interval dl = delta.enclose(bits);
  for (int j = 0; j < m; ++j) {
    Scalar v = qs * A.beta(j) - Scalar(static_cast<long>(w.b[j]));
    for (int i = 0; i < d; ++i) v = v + Scalar(static_cast<long>(w.a[i])) * A.block(i, j);
    Interval e = v.enclose(bits);
    if (e.hi < 0) {
      e = Interval{Rational(-e.hi), Rational(-e.lo)};
    } else if (e.lo < 0) {
      e = Interval{Rational(0), std::max(Rational(-e.lo), e.hi)};
    }
    merge(guarded_less(e, dl, guard));
  }
  return verdict;
}

Real proof_kappa(int d, int m, const Real& ball_measure) {
  if (ball_measure <= 0 || ball_measure > 1) {
    throw PreconditionError("ball measure must lie in (0, 1]");
  }
  return ball_measure / (boost::multiprecision::pow(Real(4), Real(d + 2)) *
                         const_Cdm(d + 1, m));
}

double Ball::measure() const {
  return std::pow(2 * radius, static_cast<double>(center.size()));
}

CoverageResult ubiquity_coverage(const ParamMatrix& A, std::int64_t Q,
                                 const Scalar& delta, const Scalar& kappa,
                                 const Ball& ball, const Sampler& sampler,
                                 RadiusMode mode, const EnumConfig& cfg) {
  const int d = A.d();
  const int m = A.m();
  if (d < 1) throw DimensionError("coverage needs d >= 1");
  if (static_cast<int>(ball.center.size()) != d) {
    throw DimensionError("ball center must have length d");
  }
  if (kappa.sign() < 0 || compare(kappa.value(), Surd(1)) >= 0) {
    throw PreconditionError("kappa must lie in [0, 1)");
  }
  if (mode == RadiusMode::kUbiquity && kappa.sign() == 0) {
    throw PreconditionError("ubiquity radius needs kappa > 0");
  }
  if (delta.sign() <= 0 || compare(delta.value(), Surd(1)) > 0) {
    throw PreconditionError("delta must lie in (0, 1]");
  }
  if (ball.radius <= 0) throw PreconditionError("ball radius must be > 0");
  for (double c : ball.center) {
    if (c - ball.radius < 0 || c + ball.radius > 1) {
      throw PreconditionError("ball must lie in [0,1]^d");
    }
  }
  if (sampler.kind == Sampler::Kind::kExact && d != 1) {
    throw PreconditionError("exact measure is available for d = 1 only");
  }

  CoverageResult res;
  res.kappa = kappa;
  ResonantSet rs = resonant_set(A, Q, delta, kappa, cfg);
  res.ball_count = rs.size();
  res.ambiguous_balls = rs.ambiguous_size();
  res.empty = rs.size() == 0;

  // Radii in long double; the scale s = Q^{1/d} delta^{m/d}.
  const long double s = std::pow(static_cast<long double>(Q), 1.0L / d) *
                        std::pow(static_cast<long double>(delta.to_double()),
                                 static_cast<long double>(m) / d);
  const long double common =
      mode == RadiusMode::kUbiquity
          ? 1.0L / (static_cast<long double>(kappa.to_double()) * Q * s)
          : 0.0L;
  auto radius_of = [&](std::int64_t q) {
    return mode == RadiusMode::kUbiquity ? common : 1.0L / (q * s);
  };
  res.radius = static_cast<double>(mode == RadiusMode::kUbiquity ? common : 1.0L / s);
  const std::size_t stride = static_cast<std::size_t>(d + 1);

  if (sampler.kind == Sampler::Kind::kExact) {
    const long double lo = ball.center[0] - ball.radius;
    const long double hi = ball.center[0] + ball.radius;
    std::vector<std::pair<long double, long double>> iv;
    iv.reserve(rs.size());
    for (std::size_t k = 0; k < rs.size(); ++k) {
      const std::int64_t q = rs.members[k * stride];
      const long double c = static_cast<long double>(rs.members[k * stride + 1]) / q;
      const long double r = radius_of(q);
      long double a = std::max(lo, c - r);
      long double b = std::min(hi, c + r);
      if (a < b) iv.emplace_back(a, b);
    }
    std::sort(iv.begin(), iv.end());
    long double total = 0;
    long double cur_a = 0;
    long double cur_b = 0;
    bool open = false;
    for (const auto& [a, b] : iv) {
      if (open && a <= cur_b) {
        cur_b = std::max(cur_b, b);
        continue;
      }
      if (open) total += cur_b - cur_a;
      cur_a = a;
      cur_b = b;
      open = true;
    }
    if (open) total += cur_b - cur_a;
    res.fraction = static_cast<double>(std::min(1.0L, total / (hi - lo)));
    return res;
  }

  // Sample points.
  std::vector<double> pts;
  if (sampler.kind == Sampler::Kind::kGrid) {
    if (sampler.resolution < 1) throw PreconditionError("grid resolution must be >= 1");
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(sampler.resolution);
    check_budget(static_cast<long double>(total), cfg, "coverage grid");
    std::vector<std::int64_t> j(static_cast<std::size_t>(d), 0);
    for (std::uint64_t t = 0; t < total; ++t) {
      for (int i = 0; i < d; ++i) {
        double w = 2 * ball.radius / sampler.resolution;
        pts.push_back(ball.center[i] - ball.radius + (j[i] + 0.5) * w);
      }
      for (int i = d - 1; i >= 0; --i) {
        if (++j[i] < sampler.resolution) break;
        j[i] = 0;
      }
    }
  } else {
    if (sampler.samples < 1) throw PreconditionError("samples must be >= 1");
    std::mt19937_64 g(sampler.seed);
    for (std::int64_t t = 0; t < sampler.samples; ++t) {
      for (int i = 0; i < d; ++i) {
        double u = static_cast<double>(g() >> 11) * 0x1p-53;
        pts.push_back(ball.center[i] - ball.radius + 2 * ball.radius * u);
      }
    }
  }
  const std::size_t N = pts.size() / static_cast<std::size_t>(d);

  // Lookup structures.
  std::unordered_set<std::vector<std::int64_t>, VecHash> member_set;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, VecHash> cells;
  const double h = static_cast<double>(common);
  if (mode == RadiusMode::kMinkowski) {
    for (std::size_t k = 0; k < rs.size(); ++k) {
      member_set.emplace(rs.members.begin() + static_cast<std::ptrdiff_t>(k * stride),
                         rs.members.begin() + static_cast<std::ptrdiff_t>((k + 1) * stride));
    }
  } else {
    std::vector<std::int64_t> key(static_cast<std::size_t>(d));
    for (std::size_t k = 0; k < rs.size(); ++k) {
      const double q = rs.members[k * stride];
      for (int i = 0; i < d; ++i) {
        key[i] = static_cast<std::int64_t>(std::floor(rs.members[k * stride + 1 + i] / q / h));
      }
      cells[key].push_back(k);
    }
  }
  const std::int64_t q_lo = std::max<std::int64_t>(
      1, (Surd(kappa.value()) * Surd(Q)).floor().convert_to<std::int64_t>() + 1);

  auto covered = [&](const double* x) {
    if (mode == RadiusMode::kMinkowski) {
      const double R0 = static_cast<double>(1.0L / s);
      std::vector<std::int64_t> key(stride);
      std::vector<std::vector<std::int64_t>> cand(static_cast<std::size_t>(d));
      std::vector<std::size_t> idx(static_cast<std::size_t>(d));
      for (std::int64_t q = q_lo; q <= Q; ++q) {
        bool any = true;
        for (int i = 0; i < d && any; ++i) {
          cand[i].clear();
          const double t = q * x[i];
          for (auto a = static_cast<std::int64_t>(std::ceil(t - R0));
               a <= static_cast<std::int64_t>(std::floor(t + R0)); ++a) {
            if (a >= 0 && a <= q && std::fabs(t - a) < R0) cand[i].push_back(a);
          }
          any = !cand[i].empty();
        }
        if (!any) continue;
        std::fill(idx.begin(), idx.end(), 0);
        key[0] = q;
        for (;;) {
          for (int i = 0; i < d; ++i) key[i + 1] = cand[i][idx[i]];
          if (member_set.count(key)) return true;
          int i = d - 1;
          while (i >= 0 && ++idx[i] == cand[i].size()) {
            idx[i] = 0;
            --i;
          }
          if (i < 0) break;
        }
      }
      return false;
    }
    std::vector<std::int64_t> base(static_cast<std::size_t>(d));
    std::vector<std::int64_t> key(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) base[i] = static_cast<std::int64_t>(std::floor(x[i] / h));
    std::vector<int> off(static_cast<std::size_t>(d), -1);
    for (;;) {
      for (int i = 0; i < d; ++i) key[i] = base[i] + off[i];
      auto it = cells.find(key);
      if (it != cells.end()) {
        for (std::size_t k : it->second) {
          const double q = rs.members[k * stride];
          bool in = true;
          for (int i = 0; i < d && in; ++i) {
            in = std::fabs(x[i] - rs.members[k * stride + 1 + i] / q) < h;
          }
          if (in) return true;
        }
      }
      int i = d - 1;
      while (i >= 0 && ++off[i] > 1) {
        off[i] = -1;
        --i;
      }
      if (i < 0) break;
    }
    return false;
  };

  const int workers = std::max(1, cfg.workers);
  std::vector<std::uint64_t> parts(static_cast<std::size_t>(workers), 0);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t b = N * w / workers;
      const std::size_t e = N * (w + 1) / workers;
      for (std::size_t t = b; t < e; ++t) {
        if (covered(&pts[t * d])) ++parts[w];
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto c : parts) res.covered += c;
  res.samples = N;
  res.fraction = static_cast<double>(res.covered) / static_cast<double>(N);
  if (sampler.kind == Sampler::Kind::kMonteCarlo) {
    res.std_error = std::sqrt(res.fraction * (1 - res.fraction) / static_cast<double>(N));
  }
  return res;
}

}  // namespace ratnear
