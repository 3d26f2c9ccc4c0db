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

#ifndef TEAMDYN_CLI_PLOT_HPP_
#define TEAMDYN_CLI_PLOT_HPP_

#include <string>
#include <vector>

#include "teamdyn/csv.hpp"
#include "teamdyn_cli/commands.hpp"

namespace teamdyn::cli {

// phase: exactly two columns, drawn as a curve in their plane.
// series: columns against t.
// running_average: running time averages of the columns against t.
std::string render_svg(const CsvTable& table, const std::string& mode,
                       const std::vector<std::string>& columns,
                       const std::string& title);

// Reads the configured CSV (default <out>/trajectory.csv) and writes
// <out>/plot.svg.
CommandResult run_plot(const ExperimentConfig& config);

}  // namespace teamdyn::cli

#endif  // TEAMDYN_CLI_PLOT_HPP_
