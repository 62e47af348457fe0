// Copyright 2026 The mrref Authors.
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

#ifndef MRREF_TOOLS_COMMANDS_H_
#define MRREF_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace mrref::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitLogic = 1;
inline constexpr int kExitInput = 2;

inline constexpr const char *kToolVersion = "mrref 1.0.0";

// Runs the command line `args` (without the program name). Reports go to
// `out`, diagnostics to `err`. Returns the process exit code.
int Run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

}  // namespace mrref::cli

#endif  // MRREF_TOOLS_COMMANDS_H_
