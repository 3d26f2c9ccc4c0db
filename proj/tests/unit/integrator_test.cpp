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

#include "teamdyn/integrator.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "teamdyn/errors.hpp"

using namespace teamdyn;

namespace {

// y' = -y on [0, 1]; returns the final error.
double decay_error(Method method, double step) {
  IntegratorConfig config;
  config.method = method;
  config.step = step;
  config.max_time = 1.0;
  config.sample_interval = 1.0;
  double last = 0.0;
  const std::vector<double> y0{1.0};
  integrate_ode([](std::span<const double> y, std::span<double> dy) { dy[0] = -y[0]; },
                y0, config, [&](double, std::span<const double> y) { last = y[0]; });
  return std::abs(last - std::exp(-1.0));
}

}  // namespace

TEST_CASE("method names") {
  CHECK(parse_method("rk4") == Method::kRk4);
  CHECK(parse_method("dopri45") == Method::kDormandPrince45);
  CHECK_THROWS_AS(parse_method("euler"), InputError);
}

TEST_CASE("config validation") {
  IntegratorConfig config;
  CHECK_NOTHROW(config.validate());
  config.max_time = -1.0;
  CHECK_THROWS_AS(config.validate(), InputError);
  config = {};
  config.sample_interval = 0.0;
  CHECK_THROWS_AS(config.validate(), InputError);
}

TEST_CASE("RK4 is fourth order") {
  const double e1 = decay_error(Method::kRk4, 0.1);
  const double e2 = decay_error(Method::kRk4, 0.05);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("adaptive method meets its tolerance") {
  CHECK(decay_error(Method::kDormandPrince45, 1e-3) <= 1e-9);
}

TEST_CASE("samples land on exact multiples of the interval") {
  IntegratorConfig config;
  config.max_time = 1.05;
  config.sample_interval = 0.1;
  std::vector<double> times;
  const std::vector<double> y0{0.0, 1.0};
  integrate_ode(
      [](std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
      },
      y0, config, [&](double t, std::span<const double> y) {
        times.push_back(t);
        CHECK(y[0] == doctest::Approx(std::sin(t)).epsilon(1e-8));
      });
  REQUIRE(times.size() == 12);
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    CHECK(times[k] == doctest::Approx(0.1 * static_cast<double>(k)).epsilon(1e-14));
  }
  CHECK(times.back() == 1.05);
}

TEST_CASE("dense output interpolates within a step") {
  IntegratorConfig config;
  config.max_time = 2.0;
  config.sample_interval = 2.0;
  double worst = 0.0;
  const std::vector<double> y0{1.0};
  integrate_ode([](std::span<const double> y, std::span<double> dy) { dy[0] = -y[0]; },
                y0, config, [](double, std::span<const double>) {},
                [&](const DenseSegment& seg) {
                  double v = 0.0;
                  const double mid = 0.5 * (seg.t0() + seg.t1());
                  seg.eval(mid, std::span<double>(&v, 1));
                  worst = std::max(worst, std::abs(v - std::exp(-mid)));
                  return true;
                });
  CHECK(worst <= 1e-6);
}

TEST_CASE("observer can stop the run") {
  IntegratorConfig config;
  config.max_time = 10.0;
  const std::vector<double> y0{0.0};
  const auto outcome = integrate_ode(
      [](std::span<const double>, std::span<double> dy) { dy[0] = 1.0; }, y0, config,
      [](double, std::span<const double>) {},
      [](const DenseSegment& seg) { return seg.t1() < 1.0; });
  CHECK(outcome.status == OdeStatus::kStopped);
  CHECK(outcome.t_end < 10.0);
}

TEST_CASE("projection keeps states in range") {
  IntegratorConfig config;
  config.method = Method::kRk4;
  config.step = 0.1;
  config.max_time = 1.0;
  const std::vector<double> y0{0.95};
  double worst = 0.0;
  integrate_ode(
      [](std::span<const double>, std::span<double> dy) { dy[0] = 1.0; }, y0, config,
      [&](double, std::span<const double> y) { worst = std::max(worst, y[0]); }, {},
      [](std::span<double> y) {
        const bool changed = y[0] > 1.0;
        if (changed) y[0] = 1.0;
        return changed;
      });
  CHECK(worst == 1.0);
}
