// Copyright 2026 The teamdyn Authors.
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

#ifndef TEAMDYN_CLI_VERIFY_HPP_
#define TEAMDYN_CLI_VERIFY_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "teamdyn_cli/commands.hpp"

namespace teamdyn::cli {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int cases = 1000;
  int max_agents = 12;  // n + m
  double tol = 1e-12;
  double gradient_tol = 1e-6;
  // Test hook: negates the library's rescaled field before comparison.
  bool inject_sign_flip = false;
};

struct VerifyItem {
  std::string name;
  long comparisons = 0;
  long failures = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass() const { return failures == 0; }
};

std::vector<VerifyItem> verify_suite(const VerifyOptions& options);

// Runs the suite and, when an output directory is given, writes verify.json
// there.
CommandResult run_verify(const VerifyOptions& options,
                         const std::optional<std::filesystem::path>& out);

}  // namespace teamdyn::cli

#endif  // TEAMDYN_CLI_VERIFY_HPP_
