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

#include "teamdyn/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "teamdyn/errors.hpp"

namespace teamdyn {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t";
  for (int i = 1; i <= trajectory.n(); ++i) out << ",x_" << i;
  for (int j = 1; j <= trajectory.m(); ++j) out << ",y_" << j;
  out << ",f,g,uA\n";
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    out << format_double(trajectory.time(k));
    for (double v : trajectory.state(k)) out << ',' << format_double(v);
    out << ',' << format_double(trajectory.f(k)) << ','
        << format_double(trajectory.g(k)) << ','
        << format_double(trajectory.utility(k)) << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& trajectory) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_trajectory_csv(out, trajectory);
}

const std::vector<double>& CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return columns[i];
  }
  throw InputError("unknown column '" + std::string(name) + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw InputError("CSV is empty");
  {
    std::istringstream header(line);
    std::string name;
    while (std::getline(header, name, ',')) table.names.push_back(name);
  }
  table.columns.resize(table.names.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::size_t col = 0, pos = 0;
    while (pos <= line.size()) {
      const std::size_t end = std::min(line.find(',', pos), line.size());
      if (col >= table.names.size()) {
        throw InputError("CSV row " + std::to_string(row) + " has too many fields");
      }
      double v = 0.0;
      const char* first = line.data() + pos;
      const char* last = line.data() + end;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) {
        throw InputError("CSV row " + std::to_string(row) + " field " +
                         std::to_string(col + 1) + " is not a number");
      }
      table.columns[col++].push_back(v);
      pos = end + 1;
    }
    if (col != table.names.size()) {
      throw InputError("CSV row " + std::to_string(row) + " has " +
                       std::to_string(col) + " fields, header has " +
                       std::to_string(table.names.size()));
    }
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace teamdyn
