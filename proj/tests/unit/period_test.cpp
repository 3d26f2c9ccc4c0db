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
#include <numbers>

#include "doctest.h"
#include "teamdyn/analysis.hpp"
#include "teamdyn/errors.hpp"
#include "test_support.hpp"

using namespace teamdyn;

TEST_CASE("small orbits of the single gene game have the linearized period") {
  // Near the center r = w = 1/4, so the rescaled flow rotates at 1/4.
  const auto game = testing::identity_pair();
  IntegratorConfig config;
  config.max_time = 100.0;
  const auto det = detect_period(game, testing::state({0.501}, {0.5}), config);
  REQUIRE(det.estimate.has_value());
  CHECK(det.estimate->period == doctest::Approx(8.0 * std::numbers::pi).epsilon(1e-4));
  CHECK(det.estimate->return_error <= 1e-6);
}

TEST_CASE("large single gene orbit closes") {
  const auto game = testing::identity_pair();
  IntegratorConfig config;
  config.max_time = 200.0;
  const auto det = detect_period(game, testing::state({0.9}, {0.5}), config);
  REQUIRE(det.estimate.has_value());
  CHECK(det.estimate->return_error <= 1e-6);
  CHECK(det.crossings.size() >= 2);
  // Successive crossing times are one period apart.
  const auto& c = det.crossings;
  CHECK(c[1].t - c[0].t == doctest::Approx(det.estimate->period).epsilon(1e-8));
}

TEST_CASE("raw field period is the rescaled period over alpha") {
  const auto game = testing::identity_pair();
  IntegratorConfig config;
  config.max_time = 200.0;
  const auto start = testing::state({0.8}, {0.4});
  const auto rescaled = detect_period(game, start, config);
  PeriodOptions raw_options;
  raw_options.field = FieldKind::kRaw;
  const auto raw = detect_period(game, start, config, raw_options);
  REQUIRE(rescaled.estimate.has_value());
  REQUIRE(raw.estimate.has_value());
  CHECK(raw.estimate->period * game.alpha() ==
        doctest::Approx(rescaled.estimate->period).epsilon(1e-7));
}

TEST_CASE("fixed starts are rejected") {
  const auto game = testing::identity_pair();
  IntegratorConfig config;
  CHECK_THROWS_AS(detect_period(game, testing::state({0.5}, {0.5}), config), InputError);
}

TEST_CASE("no period within a short horizon") {
  const auto game = testing::identity_pair();
  IntegratorConfig config;
  config.max_time = 5.0;
  const auto det = detect_period(game, testing::state({0.9}, {0.5}), config);
  CHECK_FALSE(det.estimate.has_value());
}
