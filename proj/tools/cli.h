// Copyright 2026 The envadapt Authors
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

#ifndef ENVADAPT_TOOLS_CLI_H_
#define ENVADAPT_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace envadapt::cli {

// Runs the command line `args` (without the program name) and returns the
// process exit code: 0 pass, 2 infeasible, 1 anything else.
int Run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace envadapt::cli

#endif  // ENVADAPT_TOOLS_CLI_H_
