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

#ifndef RATNEAR_TOOLS_CLI_H_
#define RATNEAR_TOOLS_CLI_H_

#include <ostream>

namespace ratnear::cli {

inline constexpr const char* kFormatVersion = "ratnear-report 1";

// Exit codes: 0 success, 1 verification failure, 2 usage or configuration
// error, 3 resource budget exceeded.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ratnear::cli

#endif  // RATNEAR_TOOLS_CLI_H_
