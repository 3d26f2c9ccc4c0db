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

#include <sstream>

#include "doctest.h"
#include "teamdyn/errors.hpp"
#include "test_support.hpp"

using namespace teamdyn;

TEST_CASE("trajectory csv header and round trip") {
  const auto game = testing::xor_xor();
  IntegratorConfig config;
  config.max_time = 0.5;
  config.sample_interval = 0.1;
  const auto traj = integrate(game, testing::state({0.3, 0.6}, {0.2, 0.9}), config);
  std::stringstream buf;
  write_trajectory_csv(buf, traj);
  const std::string text = buf.str();
  const std::string header = text.substr(0, text.find('\n'));
  CHECK(header == "t,x_1,x_2,y_1,y_2,f,g,uA");
  const auto table = read_csv(buf);
  REQUIRE(table.rows() == traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    CHECK(table.column("t")[k] == traj.time(k));
    CHECK(table.column("x_2")[k] == traj.x(k)[1]);
    CHECK(table.column("uA")[k] == traj.utility(k));
  }
  CHECK_THROWS_AS(table.column("z"), InputError);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("malformed csv is an input error") {
  std::istringstream bad_field("a,b\n1,x\n");
  CHECK_THROWS_AS(read_csv(bad_field), InputError);
  std::istringstream short_row("a,b\n1\n");
  CHECK_THROWS_AS(read_csv(short_row), InputError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), InputError);
}
