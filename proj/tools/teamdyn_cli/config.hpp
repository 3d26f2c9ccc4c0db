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

// Declarative experiment configs. The schema is documented in
// configs/SCHEMA.md; unknown keys are rejected.

#ifndef TEAMDYN_CLI_CONFIG_HPP_
#define TEAMDYN_CLI_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "teamdyn/analysis.hpp"
#include "teamdyn/dynamics.hpp"
#include "teamdyn/game.hpp"

namespace teamdyn::cli {

enum class HamiltonianMethod { kAuto, kClosedForm, kQuadrature };

struct Thresholds {
  double return_error = 1e-6;
  std::optional<double> h_drift;  // default depends on the method
  double average = 1e-3;
  double regret = 1e-6;
  double ce_slack = -1e-4;
  double chasing_rate_guard = 1e-9;
  double periodic_fraction = 0.99;
};

struct SweepSpec {
  int random_points = 0;
  double margin = 0.05;
  std::vector<std::vector<double>> points;
  int workers = 0;  // 0: hardware concurrency
};

struct PlotSpec {
  std::string csv;  // empty: <out>/trajectory.csv
  std::string mode = "phase";
  std::vector<std::string> columns{"x_1", "y_1"};
};

struct ExperimentConfig {
  std::string name;
  std::filesystem::path source;  // config file, for resolving relative paths
  std::string f_spec;
  std::string g_spec;
  BooleanFunction f = make_builtin(Builtin::kIdentity, 1);
  BooleanFunction g = make_builtin(Builtin::kIdentity, 1);
  PayoffKernel kernel = matching_pennies();
  std::vector<double> x0;
  std::vector<double> y0;
  IntegratorConfig integrator;
  FieldKind field = FieldKind::kRescaled;
  std::vector<std::string> analyses;
  int average_periods = 50;
  int hamiltonian_periods = 10;
  HamiltonianMethod hamiltonian_method = HamiltonianMethod::kAuto;
  Thresholds thresholds;
  SweepSpec sweep;
  PlotSpec plot;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;

  TeamGame game() const { return TeamGame(f, g, kernel); }
  SystemState initial_state() const {
    return {ProductDistribution(x0), ProductDistribution(y0)};
  }
  bool wants(const std::string& analysis) const;
};

// Command-line overrides applied after parsing.
struct Overrides {
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> max_time;
  std::optional<double> tol;
};

// Accepts a path, or the name of a bundled config (fig1a, ...). Throws
// InputError on any schema violation.
ExperimentConfig load_config(const std::string& path_or_name,
                             const Overrides& overrides = {});
ExperimentConfig parse_config(const std::string& text,
                              const std::filesystem::path& source,
                              const Overrides& overrides = {});

// Directory holding the bundled configs.
std::filesystem::path bundled_config_dir();

}  // namespace teamdyn::cli

#endif  // TEAMDYN_CLI_CONFIG_HPP_
