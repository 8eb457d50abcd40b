// Copyright 2026 The pblottery Authors
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
#include <string_view>
#include <vector>

#include "pblottery/limits.hpp"

namespace pblottery {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,    // an axiom failed or the oracle found no lottery
  kExitUsage = 2,     // bad flags, unreadable files, invalid instances
  kExitInternal = 3,  // a runtime invariant of an algorithm was breached
};

// "P" caps projects and voters at P; "projects=P,voters=V" sets either.
// Throws ValidationError on malformed text.
Limits parse_limits(std::string_view text, Limits base = {});

// Runs the tool on argv (args[0] is the program name). Reports go to `out`,
// diagnostics to `err`. Reads PB_BOBW_LIMIT from the environment.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pblottery
