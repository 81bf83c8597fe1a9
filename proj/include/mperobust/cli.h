// Copyright 2026 The mperobust Authors.
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

#ifndef MPEROBUST_CLI_H_
#define MPEROBUST_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace mperobust {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // validation or domain failure
inline constexpr int kExitIo = 2;      // unreadable input, parse failure

// Runs one command. `args` excludes the program name. Data goes to `out`,
// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mperobust

#endif  // MPEROBUST_CLI_H_
