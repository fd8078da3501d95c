// Copyright 2026 The Filtrate Authors
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

namespace filtrate {

/// Full CLI entry point, stream-injected for testability.
///
/// args excludes the program name. Machine output (JSON or CSV) goes to
/// `out`, diagnostics to `err` (verbosity via FILTRATE_LOG, one of quiet,
/// info, debug). Returns 0 on success, 1 on validation failure, 2 on usage
/// errors such as a missing file or unknown flags.
int run_cli(std::vector<std::string> args, std::ostream &out,
            std::ostream &err);

}  // namespace filtrate
