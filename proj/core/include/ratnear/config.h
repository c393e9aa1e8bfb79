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

#ifndef RATNEAR_CONFIG_H_
#define RATNEAR_CONFIG_H_

#include <cstdint>

#include "ratnear/scalar.h"

namespace ratnear {

// Knobs shared by every enumeration.
struct EnumConfig {
  Precision precision = default_precision();
  std::uint64_t budget = 1000000000;
  int workers = 1;

  Rational guard() const { return guard_value(precision.guard_bits); }
  // Fixed-point enumerations cap at 192 fractional bits.
  unsigned fixed_bits() const { return precision.bits < 192 ? precision.bits : 192; }
};

// Throws ResourceLimitError when points exceeds cfg.budget.
void check_budget(long double points, const EnumConfig& cfg, const char* what);

}  // namespace ratnear

#endif  // RATNEAR_CONFIG_H_
