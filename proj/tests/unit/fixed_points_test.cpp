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
#include "test_support.hpp"

using namespace teamdyn;

TEST_CASE("XOR pair at the center is nash and strange") {
  const auto game = testing::xor_xor();
  const std::vector<double> z{0.5, 0.5, 0.5, 0.5};
  const auto report = classify_fixed_point(game, z);
  CHECK(report.is_fixed);
  CHECK(report.has(FixedPointKind::kNash));
  CHECK(report.has(FixedPointKind::kStrange));
  CHECK_FALSE(report.has(FixedPointKind::kPure));
  // A pure deviation by one gene makes the other gene's choice matter.
  CHECK(report.weakly_stable == Stability::kNo);
  CHECK(report.kind_names() == std::vector<std::string>{"nash", "strange"});
}

TEST_CASE("single gene center is nash only") {
  const auto game = testing::identity_pair();
  const auto report = classify_fixed_point(game, std::vector<double>{0.5, 0.5});
  CHECK(report.is_fixed);
  CHECK(report.has(FixedPointKind::kNash));
  CHECK_FALSE(report.has(FixedPointKind::kStrange));
  CHECK(report.weakly_stable == Stability::kNotApplicable);
}

TEST_CASE("pure profiles are fixed and tagged pure") {
  const auto game = testing::or_or();
  const auto report = classify_fixed_point(game, std::vector<double>{1, 0, 0, 1});
  CHECK(report.is_fixed);
  CHECK(report.kinds == static_cast<unsigned>(FixedPointKind::kPure));
}

TEST_CASE("a blocked gene gives a partial strange point") {
  const auto and2 = make_builtin(Builtin::kAnd, 2);
  const TeamGame game(and2, and2, matching_pennies());
  // Gene 1 pure allele 0 forces AND = 0, so gene 2 cannot matter.
  const std::vector<double> z{1.0, 0.3, 1.0, 0.7};
  const auto report = classify_fixed_point(game, z);
  CHECK(report.is_fixed);
  CHECK(report.has(FixedPointKind::kPartialStrange));
  CHECK_FALSE(report.has(FixedPointKind::kPartialNash));
  CHECK(report.weakly_stable_a == Stability::kYes);
  CHECK(report.weakly_stable == Stability::kYes);
}

TEST_CASE("non-fixed states report a residual") {
  const auto game = testing::xor_xor();
  const auto report = classify_fixed_point(game, std::vector<double>{0.3, 0.6, 0.2, 0.4});
  CHECK_FALSE(report.is_fixed);
  CHECK(report.residual > 1e-3);
  CHECK(report.kinds == 0);
}

TEST_CASE("weak stability of subsystem points") {
  const auto xor2 = make_builtin(Builtin::kXor, 2);
  CHECK(weakly_stable_check(xor2, std::vector<double>{0.5, 0.5}) == Stability::kNo);
  CHECK(weakly_stable_check(xor2, std::vector<double>{0.3, 0.5}) == Stability::kNotApplicable);
  const auto xor3 = make_builtin(Builtin::kXor, 3);
  CHECK(weakly_stable_check(xor3, std::vector<double>{0.5, 0.5, 1.0}) == Stability::kNo);
  const auto and3 = make_builtin(Builtin::kAnd, 3);
  // Two genes blocked by a third fixed at allele 0 stay irrelevant under
  // each other's pure deviations.
  CHECK(weakly_stable_check(and3, std::vector<double>{1.0, 0.4, 0.6}) == Stability::kYes);
}
