// Copyright 2026 The spike_camera Authors
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

#ifndef SPK_TOOLS_CLI_HPP
#define SPK_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace spk_cli
{
// Runs the spk command line. args excludes the program name.
// Exit codes: 0 success, 1 I/O or data error, 2 usage error.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace spk_cli

#endif  // SPK_TOOLS_CLI_HPP
