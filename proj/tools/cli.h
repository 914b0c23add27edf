/******************************************************************************
 * Copyright 2026 The spraycov Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#ifndef SPRAYCOV_TOOLS_CLI_H_
#define SPRAYCOV_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace spraycov::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitAudit = 3;

/// Runs one `spraycov` invocation. `args` excludes the program name.
int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace spraycov::cli

#endif  // SPRAYCOV_TOOLS_CLI_H_
