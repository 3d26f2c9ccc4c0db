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

#include <vector>

#include "doctest.h"
#include "teamdyn/analysis.hpp"
#include "teamdyn/errors.hpp"
#include "test_support.hpp"

using namespace teamdyn;

TEST_CASE("uniform play in matching pennies is a correlated equilibrium") {
  const auto game = testing::identity_pair();
  const std::vector<double> pi(4, 0.25);
  const auto cert = certify_correlated_equilibrium(game, pi, 1e-12);
  CHECK(cert.is_ce);
  CHECK(cert.is_cce);
  CHECK(cert.min_ce_slack == doctest::Approx(0.0));
  CHECK(cert.ce.size() == 4);
  CHECK(cert.cce.size() == 4);
}

TEST_CASE("a point mass on a pure profile fails") {
  const auto game = testing::identity_pair();
  std::vector<double> pi(4, 0.0);
  pi[0] = 1.0;  // both play allele 0: outputs (0, 0), team A wins
  const auto cert = certify_correlated_equilibrium(game, pi, 1e-9);
  CHECK_FALSE(cert.is_ce);
  CHECK_FALSE(cert.is_cce);
  // Team B gains 2 by switching to output 1.
  CHECK(cert.min_ce_slack == doctest::Approx(-2.0));
}

TEST_CASE("certificate input validation") {
  const auto game = testing::identity_pair();
  CHECK_THROWS_AS(certify_correlated_equilibrium(game, std::vector<double>(3, 1.0 / 3), 0.0),
                  InputError);
  CHECK_THROWS_AS(certify_correlated_equilibrium(game, std::vector<double>{0.5, 0.5, 0.5, -0.5}, 0.0),
                  InputError);
  CHECK_THROWS_AS(certify_correlated_equilibrium(game, std::vector<double>(4, 0.3), 0.0),
                  InputError);
}

TEST_CASE("uniform play is an equilibrium only when outputs match it") {
  // Under uniform XOR genes a single gene's allele says nothing about the
  // output, so no deviation can gain.
  const std::vector<double> pi16(16, 1.0 / 16);
  CHECK(certify_correlated_equilibrium(testing::xor_xor({3, 1, 2, 4}), pi16, 1e-12).is_ce);
  // A single gene is its output; with q = 3/4 team A prefers output 0 at
  // g = 1/2 and gains 1/2 by ignoring a recommended 1.
  const std::vector<double> pi4(4, 0.25);
  const auto cert = certify_correlated_equilibrium(testing::identity_pair({3, 1, 2, 4}), pi4, 1e-6);
  CHECK_FALSE(cert.is_ce);
  CHECK(cert.min_ce_slack == doctest::Approx(-0.5));
}
