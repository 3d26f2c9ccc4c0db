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

#include "teamdyn/oracle.hpp"

#include <cmath>

#include "doctest.h"
#include "teamdyn/errors.hpp"
#include "test_support.hpp"

using namespace teamdyn;

TEST_CASE("oracle reproduces hand values") {
  const auto xor2 = make_builtin(Builtin::kXor, 2);
  const std::vector<double> x{0.65, 0.66};
  CHECK(oracle::brute_expectation(xor2, x) == doctest::Approx(0.452).epsilon(1e-14));
  const auto pair = oracle::brute_conditional_pair(xor2, x, 1);
  CHECK(pair.zero == doctest::Approx(0.35).epsilon(1e-14));
  CHECK(pair.one == doctest::Approx(0.65).epsilon(1e-14));
}

TEST_CASE("oracle enforces its cap") {
  const TeamGame game(make_builtin(Builtin::kXor, 9), make_builtin(Builtin::kXor, 8),
                      matching_pennies());
  CHECK_THROWS_AS(oracle::EnumerationOracle{game}, CapacityError);
  const TeamGame small(make_builtin(Builtin::kXor, 8), make_builtin(Builtin::kXor, 8),
                       matching_pennies());
  CHECK_NOTHROW(oracle::EnumerationOracle{small});
}

TEST_CASE("finite differences reject bad arguments") {
  const auto f = make_builtin(Builtin::kOr, 2);
  CHECK_THROWS_AS(oracle::finite_difference_gradient(f, std::vector<double>{0.5, 0.5}, 0.1),
                  InputError);
  CHECK_THROWS_AS(oracle::finite_difference_gradient(f, std::vector<double>{0.0, 0.5}, 1e-4),
                  InputError);
}

TEST_CASE("reference Euler converges to the adaptive solution") {
  const auto game = testing::identity_pair();
  const auto start = testing::state({0.7}, {0.4});
  IntegratorConfig config;
  config.max_time = 1.0;
  const auto traj = integrate(game, start, config);
  const auto last = traj.state(traj.size() - 1);
  const auto coarse = oracle::reference_integrate(game, start, 1.0, 1e-3);
  const auto fine = oracle::reference_integrate(game, start, 1.0, 5e-4);
  const double e1 = std::abs(coarse[0] - last[0]);
  const double e2 = std::abs(fine[0] - last[0]);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.05));
}
