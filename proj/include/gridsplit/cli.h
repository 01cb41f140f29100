// Copyright 2026 The gridsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace gridsplit {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitResource = 3,
    kExitNumeric = 4,
};

/// Entry point for the `gridsplit` tool; args[0] is the program name.
/// Subcommands: gen, plan, estimate, run, analyze.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace gridsplit
