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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "teamdyn/analysis.hpp"
#include "teamdyn/errors.hpp"
#include "test_support.hpp"

using namespace teamdyn;

TEST_CASE("integer period averages sit at the equilibrium") {
  const auto game = testing::identity_pair({3, 1, 2, 4});
  IntegratorConfig config;
  config.max_time = 300.0;
  const auto start = testing::state({0.8}, {0.5});
  const auto det = detect_period(game, start, config);
  REQUIRE(det.estimate.has_value());
  const double period = det.estimate->period;
  config.max_time = 5.0 * period + 1.0;
  const auto traj = integrate(game, start, config);
  const auto avg = time_averages(game, traj, true, period);
  CHECK(avg.horizon == doctest::Approx(5.0 * period).epsilon(1e-12));
  CHECK(std::abs(avg.f_bar - game.nash_p()) <= 1e-4);
  CHECK(std::abs(avg.g_bar - game.nash_q()) <= 1e-4);
  CHECK(std::abs(avg.utility_bar - game.value()) <= 1e-4);
  for (const auto& a : avg.agents) CHECK(std::abs(a.u0 - a.u1) <= 1e-4);
}

TEST_CASE("averages of a constant trajectory") {
  const auto game = testing::xor_xor();
  IntegratorConfig config;
  config.max_time = 2.0;
  const auto traj = integrate(game, testing::state({0.5, 0.5}, {0.5, 0.5}), config);
  const auto avg = time_averages(game, traj, false, 0.0, true);
  CHECK(avg.f_bar == doctest::Approx(0.5));
  CHECK(avg.utility_bar == doctest::Approx(0.0));
  REQUIRE(avg.profile.size() == 16);
  for (double v : avg.profile) CHECK(v == doctest::Approx(1.0 / 16));
  CHECK(avg.agents.size() == 4);
}

TEST_CASE("empirical profile marginals match averaged strategies") {
  const auto game = testing::or_or();
  IntegratorConfig config;
  config.max_time = 20.0;
  const auto traj = integrate(game, testing::state({0.3, 0.6}, {0.7, 0.2}), config);
  const auto pi = empirical_profile_distribution(game, traj);
  CHECK(std::accumulate(pi.begin(), pi.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Pr[agent 0 plays allele 0] from pi against the trapezoid average of x_1.
  double from_pi = 0.0;
  for (std::size_t idx = 0; idx < pi.size(); ++idx) {
    if ((idx & 1u) == 0) from_pi += pi[idx];
  }
  double integral = 0.0;
  for (std::size_t k = 1; k < traj.size(); ++k) {
    integral += 0.5 * (traj.x(k)[0] + traj.x(k - 1)[0]) * (traj.time(k) - traj.time(k - 1));
  }
  CHECK(from_pi == doctest::Approx(integral / traj.time(traj.size() - 1)).epsilon(1e-10));
}

TEST_CASE("profile distribution is capped") {
  const TeamGame game(make_builtin(Builtin::kXor, 9), make_builtin(Builtin::kXor, 8),
                      matching_pennies());
  Trajectory traj(9, 8);
  const std::vector<double> s(17, 0.5);
  traj.append(0.0, s, 0.5, 0.5, 0.0);
  traj.append(1.0, s, 0.5, 0.5, 0.0);
  CHECK_THROWS_AS(empirical_profile_distribution(game, traj), CapacityError);
}
