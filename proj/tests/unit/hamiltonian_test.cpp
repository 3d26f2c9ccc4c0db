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

#include "doctest.h"
#include "teamdyn/analysis.hpp"
#include "teamdyn/errors.hpp"
#include "test_support.hpp"

using namespace teamdyn;

namespace {

IntegratorConfig profile_config() {
  IntegratorConfig config;
  config.max_time = 200.0;
  config.sample_interval = 0.01;
  return config;
}

}  // namespace

TEST_CASE("frozen single gene value") {
  CHECK(closed_form_H_single_gene(0.5, 0.5, 0.9, 0.5) ==
        doctest::Approx(0.5108256237659906).epsilon(1e-14));
  CHECK(closed_form_H_single_gene(0.3, 0.7, 0.3, 0.7) == 0.0);
}

TEST_CASE("rate profile rejects bad knots") {
  CHECK_THROWS_AS(RateProfile(Team::kA, {{0.1, 1.0, 0.0}}), InputError);
  CHECK_THROWS_AS(RateProfile(Team::kA, {{0.2, 1.0, 0.0}, {0.1, 1.0, 0.0}}), InputError);
  CHECK_THROWS_AS(RateProfile(Team::kA, {{0.1, 0.0, 0.0}, {0.2, 1.0, 0.0}}), InputError);
}

TEST_CASE("rate profile interpolates its knots and stays in domain") {
  const RateProfile prof(Team::kA, {{0.0, 1.0, 0.0}, {0.5, 2.0, 1.0}, {1.0, 2.5, 0.0}});
  CHECK(prof.rate(0.5) == doctest::Approx(2.0));
  CHECK(prof.rate(0.25) >= 1.0);
  CHECK(prof.rate(0.25) <= 2.0);
  CHECK(prof.interval(0.75) == 1);
  CHECK_THROWS_AS(prof.rate(1.5), DomainError);
}

TEST_CASE("identity rate profile is f(1 - f)") {
  const auto id = make_builtin(Builtin::kIdentity, 1);
  const auto prof = rate_profile(id, ProductDistribution({0.5}), profile_config());
  CHECK(prof.z_min() < 1e-6);
  CHECK(prof.z_max() > 1.0 - 1e-6);
  for (double z : {0.01, 0.2, 0.5, 0.77, 0.99}) {
    CHECK(prof.rate(z) == doctest::Approx(z * (1.0 - z)).epsilon(1e-9));
  }
}

TEST_CASE("rate slope matches the identity derivative") {
  const auto id = make_builtin(Builtin::kIdentity, 1);
  // f = 1 - x, r = x(1-x); dr/df = 1 - 2f.
  CHECK(rate_slope(id, std::vector<double>{0.8}) == doctest::Approx(1.0 - 2 * 0.2));
}

TEST_CASE("quadrature hamiltonian matches the closed form") {
  const auto id = make_builtin(Builtin::kIdentity, 1);
  const auto prof = rate_profile(id, ProductDistribution({0.5}), profile_config());
  const Hamiltonian h(prof, prof, 0.5, 0.5);
  for (auto [xi, zeta] : {std::pair{0.9, 0.5}, {0.3, 0.6}, {0.05, 0.95}}) {
    const double expect = closed_form_H_single_gene(0.5, 0.5, xi, zeta);
    CHECK(std::abs(h(xi, zeta) - expect) <= 1e-8);
  }
  const auto prof_b = rate_profile(id, ProductDistribution({0.4}), profile_config(), Team::kB);
  CHECK(std::abs(hamiltonian(prof, prof_b, 0.3, 0.7, 0.2, 0.4) -
                 closed_form_H_single_gene(0.3, 0.7, 0.2, 0.4)) <= 1e-8);
}

TEST_CASE("single gene H is conserved along the flow") {
  const auto game = testing::identity_pair({3, 1, 2, 4});
  IntegratorConfig config;
  config.max_time = 60.0;
  const auto traj = integrate(game, testing::state({0.9}, {0.5}), config);
  const double p = game.nash_p(), q = game.nash_q();
  const auto stats = drift_along(traj, [&](double f, double g) {
    return closed_form_H_single_gene(p, q, f, g);
  });
  CHECK(stats.relative <= 1e-8);
  CHECK(stats.initial > 0.0);
}

TEST_CASE("drift stats over a synthetic series") {
  Trajectory traj(1, 1);
  for (int k = 0; k < 5; ++k) {
    const double v = 0.1 * k;
    const std::vector<double> s{v, v};
    traj.append(k, s, v, v, 0.0);
  }
  const auto stats = drift_along(traj, [](double f, double g) { return f + g; }, 3.0);
  CHECK(stats.initial == 0.0);
  CHECK(stats.max == doctest::Approx(0.6));
  CHECK(stats.drift == doctest::Approx(0.6));
}
