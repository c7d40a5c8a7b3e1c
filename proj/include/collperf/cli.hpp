/*
Copyright 2026 The collperf Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace collperf::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kBadArguments = 2;
inline constexpr int kInputError = 3;
inline constexpr int kModelError = 4;

/// 9 significant digits, trailing zeros kept, exponent form for very large or
/// small magnitudes ("34.0000000", "1.00000000e-05").
std::string format_seconds(double seconds);

/// Runs the command line `args` (without the program name). CSV and reports
/// go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collperf::cli
