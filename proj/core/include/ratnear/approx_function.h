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

#ifndef RATNEAR_APPROX_FUNCTION_H_
#define RATNEAR_APPROX_FUNCTION_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratnear/real.h"
#include "ratnear/scalar.h"

namespace ratnear {

// An approximation function psi: N -> R>=0. Either the power-log family
// c * t^-b * (log t)^-b_log with the convention log t = 1 for t <= e, or an
// explicit table of (q, psi(q)) pairs, evaluated at ceil(t).
class ApproxFunction {
 public:
  enum class Family { kPowerLog, kTable };

  static ApproxFunction power_log(Scalar c, Scalar b, Scalar b_log = Scalar(0));
  static ApproxFunction table(std::vector<std::pair<std::int64_t, Scalar>> values);

  // "power-log:c,b[,b_log]" or "table:q1=v1;q2=v2;..."
  static ApproxFunction parse(std::string_view spec);

  Family family() const { return family_; }
  const Scalar& c() const { return c_; }
  const Scalar& b() const { return b_; }
  const Scalar& b_log() const { return b_log_; }
  const std::vector<std::pair<std::int64_t, Scalar>>& values() const {
    return table_;
  }

  Real operator()(const Real& t) const;
  double eval(double t) const;

  // Same function multiplied by a positive constant.
  ApproxFunction scaled(const Scalar& factor) const;

  std::string describe() const;

 private:
  Family family_ = Family::kPowerLog;
  Scalar c_ = Scalar(1);
  Scalar b_ = Scalar(0);
  Scalar b_log_ = Scalar(0);
  std::vector<std::pair<std::int64_t, Scalar>> table_;
};

}  // namespace ratnear

#endif  // RATNEAR_APPROX_FUNCTION_H_
