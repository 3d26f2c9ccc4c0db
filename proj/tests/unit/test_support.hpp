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

#ifndef TEAMDYN_TESTS_TEST_SUPPORT_HPP_
#define TEAMDYN_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "teamdyn/boolfn.hpp"
#include "teamdyn/dynamics.hpp"
#include "teamdyn/game.hpp"

namespace teamdyn::testing {

// Seeded generators for property-style tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  BooleanFunction function(int arity) {
    std::vector<std::uint8_t> table(std::size_t{1} << arity);
    for (auto& v : table) v = static_cast<std::uint8_t>(integer(0, 1));
    return BooleanFunction(arity, std::move(table));
  }

  std::vector<double> marginals(int n, double lo = 0.0, double hi = 1.0) {
    std::vector<double> x(n);
    for (auto& v : x) v = uniform(lo, hi);
    return x;
  }

  // A valid kernel with either orientation of alpha.
  PayoffKernel kernel() {
    const double lo = uniform(-2.0, 1.0);
    const double hi = lo + uniform(0.1, 2.0);
    const double a = hi + uniform(0.0, 1.0), d = hi + uniform(0.0, 1.0);
    const double b = lo - uniform(0.0, 1.0), c = lo - uniform(0.0, 1.0);
    if (integer(0, 1) == 0) return {a, b, c, d};
    return {b, a, d, c};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline TeamGame xor_xor(const PayoffKernel& k = matching_pennies()) {
  return TeamGame(make_builtin(Builtin::kXor, 2), make_builtin(Builtin::kXor, 2), k);
}

inline TeamGame or_or(const PayoffKernel& k = matching_pennies()) {
  return TeamGame(make_builtin(Builtin::kOr, 2), make_builtin(Builtin::kOr, 2), k);
}

inline TeamGame identity_pair(const PayoffKernel& k = matching_pennies()) {
  return TeamGame(make_builtin(Builtin::kIdentity, 1),
                  make_builtin(Builtin::kIdentity, 1), k);
}

inline SystemState state(std::vector<double> x, std::vector<double> y) {
  return {ProductDistribution(std::move(x)), ProductDistribution(std::move(y))};
}

}  // namespace teamdyn::testing

#endif  // TEAMDYN_TESTS_TEST_SUPPORT_HPP_
