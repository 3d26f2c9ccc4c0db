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

#ifndef TEAMDYN_CSV_HPP_
#define TEAMDYN_CSV_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "teamdyn/dynamics.hpp"

namespace teamdyn {

// Header t,x_1..x_n,y_1..y_m,f,g,uA; values printed with 17 significant
// digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& trajectory);

// Numeric CSV with a header row, stored by column.
struct CsvTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
  // Throws InputError for unknown names.
  const std::vector<double>& column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

// Shortest round-trip form with 17 significant digits.
std::string format_double(double v);

}  // namespace teamdyn

#endif  // TEAMDYN_CSV_HPP_
