// Copyright 2026 The bwbounds Authors
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

#ifndef BWBOUNDS_TOOLS_APP_CLI_H_
#define BWBOUNDS_TOOLS_APP_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace bwbounds::app {

enum ExitCode { kExitOk = 0, kExitBound = 1, kExitUsage = 2 };

// args[0] is the program name. Reports and error JSON go to `out`,
// summaries and progress to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bwbounds::app

#endif  // BWBOUNDS_TOOLS_APP_CLI_H_
