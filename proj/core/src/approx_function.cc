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

#include "ratnear/approx_function.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ratnear/errors.h"

namespace ratnear {
namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto p = s.find(sep, start);
    out.emplace_back(s.substr(start, p == std::string_view::npos ? s.size() - start
                                                                 : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

}  // namespace

ApproxFunction ApproxFunction::power_log(Scalar c, Scalar b, Scalar b_log) {
  if (c.sign() <= 0) throw PreconditionError("power-log needs c > 0");
  ApproxFunction f;
  f.family_ = Family::kPowerLog;
  f.c_ = std::move(c);
  f.b_ = std::move(b);
  f.b_log_ = std::move(b_log);
  return f;
}

ApproxFunction ApproxFunction::table(
    std::vector<std::pair<std::int64_t, Scalar>> values) {
  if (values.empty()) throw PreconditionError("empty approximation table");
  std::sort(values.begin(), values.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].first < 1) throw PreconditionError("table keys must be >= 1");
    if (i > 0 && values[i].first == values[i - 1].first) {
      throw PreconditionError("duplicate table key");
    }
    if (values[i].second.sign() < 0) {
      throw PreconditionError("table values must be non-negative");
    }
  }
  ApproxFunction f;
  f.family_ = Family::kTable;
  f.table_ = std::move(values);
  return f;
}

ApproxFunction ApproxFunction::parse(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("approximation function needs 'power-log:' or 'table:'");
  }
  std::string_view kind = spec.substr(0, colon);
  std::string_view body = spec.substr(colon + 1);
  if (kind == "power-log") {
    auto parts = split(body, ',');
    if (parts.size() < 2 || parts.size() > 3) {
      throw ParseError("power-log needs c,b[,b_log]");
    }
    return power_log(Scalar::parse(parts[0]), Scalar::parse(parts[1]),
                     parts.size() == 3 ? Scalar::parse(parts[2]) : Scalar(0));
  }
  if (kind == "table") {
    std::vector<std::pair<std::int64_t, Scalar>> values;
    for (const auto& item : split(body, ';')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("table entry needs q=value");
      values.emplace_back(std::stoll(item.substr(0, eq)),
                          Scalar::parse(item.substr(eq + 1)));
    }
    return table(std::move(values));
  }
  throw ParseError("unknown approximation family: " + std::string(kind));
}

Real ApproxFunction::operator()(const Real& t) const {
  if (family_ == Family::kTable) {
    Real ct = boost::multiprecision::ceil(t);
    auto key = ct.convert_to<long long>();
    auto it = std::lower_bound(
        table_.begin(), table_.end(), key,
        [](const auto& e, long long k) { return e.first < k; });
    if (it == table_.end() || it->first != key) {
      throw PreconditionError("approximation table has no value at q = " +
                              std::to_string(key));
    }
    return to_real(it->second);
  }
  Real v = to_real(c_);
  if (!b_.is_zero()) v *= boost::multiprecision::pow(t, -to_real(b_));
  if (!b_log_.is_zero()) {
    v *= boost::multiprecision::pow(log_convention(t), -to_real(b_log_));
  }
  return v;
}

double ApproxFunction::eval(double t) const {
  if (family_ == Family::kTable) return (*this)(Real(t)).convert_to<double>();
  double v = c_.to_double();
  v *= std::pow(t, -b_.to_double());
  v *= std::pow(log_convention(t), -b_log_.to_double());
  return v;
}

ApproxFunction ApproxFunction::scaled(const Scalar& factor) const {
  if (factor.sign() <= 0) throw PreconditionError("scale factor must be positive");
  ApproxFunction f = *this;
  if (family_ == Family::kPowerLog) {
    f.c_ = c_ * factor;
  } else {
    for (auto& [q, v] : f.table_) v = v * factor;
  }
  return f;
}

namespace {

// Long exact sources (converted reals) are shown as 17-digit decimals.
std::string short_source(const Scalar& s) {
  if (s.source().size() <= 24) return s.source();
  std::ostringstream out;
  out.precision(17);
  out << "~" << s.to_double();
  return out.str();
}

}  // namespace

std::string ApproxFunction::describe() const {
  if (family_ == Family::kPowerLog) {
    return "power-log:" + short_source(c_) + "," + short_source(b_) + "," +
           short_source(b_log_);
  }
  std::string out = "table:";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i > 0) out += ";";
    out += std::to_string(table_[i].first) + "=" + table_[i].second.source();
  }
  return out;
}

}  // namespace ratnear
