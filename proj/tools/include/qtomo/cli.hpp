// Copyright 2026 The qtomo Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtomo::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerifiedFailure = 1,  // mathematical mismatch, rank deficiency, error above threshold
    kUsageError = 2,       // bad flags, unreadable or malformed input, violated precondition
};

/// Runs `qtomo <args...>` (args excludes the program name). Results go to
/// `out` unless --output is given; diagnostics and log lines go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtomo::cli
