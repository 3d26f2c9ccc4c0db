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

#ifndef TEAMDYN_CLI_COMMANDS_HPP_
#define TEAMDYN_CLI_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "teamdyn_cli/config.hpp"

namespace teamdyn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIntegration = 3;
inline constexpr int kExitThreshold = 4;

// One pass/fail comparison against a configured threshold.
struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool at_most = true;  // value <= limit, otherwise value >= limit
  bool pass = false;
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::vector<Check> checks;

  bool passed() const;
  const Check* find(const std::string& name) const;
};

// Seeded uniform doubles in [0,1). The engine's output sequence is fixed by
// the standard, unlike std::uniform_real_distribution, so runs reproduce
// across toolchains.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(next() * (hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

// Writes trajectory.csv and meta.json. Integration failure writes the
// partial trajectory and returns kExitIntegration.
CommandResult run_simulate(const ExperimentConfig& config);

// Runs the configured analyses and writes report.json. Returns
// kExitThreshold when a check fails.
CommandResult run_analyze(const ExperimentConfig& config);

// Writes sweep.csv and report.json.
CommandResult run_sweep(const ExperimentConfig& config);

// Shared JSON fragments.
nlohmann::json describe_game(const ExperimentConfig& config);
nlohmann::json describe_integrator(const ExperimentConfig& config);
nlohmann::json check_to_json(const Check& check);

// Writes JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace teamdyn::cli

#endif  // TEAMDYN_CLI_COMMANDS_HPP_
