// Copyright 2026 The qhartley Authors
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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhartley/cli/config.hpp"

namespace qh::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalFailure = 3, kCheckFailure = 4 };

/// Flag overrides; each wins over the config file.
struct CommandLine {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;   // the command's own seed (train.*, sample.* or verify.*)
  std::optional<std::uint64_t> shots;
  std::optional<std::string> model;
  std::optional<int> n_min;  // verify / compare range
  std::optional<int> n_max;
  bool corrupt_qht = false;
};

const std::vector<std::string_view>& command_names();

RunConfig resolve_config(std::string_view command, const CommandLine& cl);

/// Runs one subcommand, writing artifacts under output.directory and progress
/// to `out`. Errors are caught, reported on `err` and mapped to ExitCode.
int run_command(std::string_view command, const CommandLine& cl, std::ostream& out, std::ostream& err);

}  // namespace qh::cli
