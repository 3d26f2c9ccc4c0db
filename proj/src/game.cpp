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

#include "teamdyn/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "teamdyn/errors.hpp"

namespace teamdyn {

PayoffKernel matching_pennies() { return {1.0, -1.0, -1.0, 1.0}; }
PayoffKernel rescaled_matching_pennies() { return {1.0, 0.0, 0.0, 1.0}; }

ValidatedKernel validate_kernel(const PayoffKernel& k) {
  for (double v : {k.a, k.b, k.c, k.d}) {
    if (!std::isfinite(v)) throw InputError("kernel entries must be finite");
  }
  const double alpha = k.alpha();
  if (alpha == 0.0) {
    throw InputError("degenerate kernel: a - b - c + d == 0");
  }
  const bool diagonal_high = std::min(k.a, k.d) > std::max(k.b, k.c);
  const bool diagonal_low = std::max(k.a, k.d) < std::min(k.b, k.c);
  if (!diagonal_high && !diagonal_low) {
    throw InputError(
        "kernel is dominance solvable: need min(a,d) > max(b,c) or "
        "max(a,d) < min(b,c)");
  }
  ValidatedKernel out;
  out.kernel = k;
  out.alpha = alpha;
  out.p = (k.d - k.c) / alpha;
  out.q = (k.d - k.b) / alpha;
  return out;
}

TeamGame::TeamGame(BooleanFunction f, BooleanFunction g,
                   const PayoffKernel& kernel)
    : f_(std::move(f)), g_(std::move(g)), kernel_(validate_kernel(kernel)) {}

std::string TeamGame::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "f=[" << f_.to_string() << "] g=[" << g_.to_string() << "] U=("
      << kernel().a << "," << kernel().b << ";" << kernel().c << ","
      << kernel().d << ")";
  return out.str();
}

double pure_utility(const TeamGame& game, std::span<const std::uint8_t> s,
                    std::span<const std::uint8_t> sigma) {
  return game.kernel().entry(game.f().eval(s), game.g().eval(sigma));
}

double expected_team_utility(const TeamGame& game, std::span<const double> x,
                             std::span<const double> y) {
  return game.kernel().mixed(expectation(game.f(), x),
                             expectation(game.g(), y));
}

ConditionalPair conditional_agent_utilities(const TeamGame& game,
                                            std::span<const double> x,
                                            std::span<const double> y,
                                            Team team, int agent) {
  const PayoffKernel& k = game.kernel();
  if (team == Team::kA) {
    const ConditionalPair fi = conditional_pair(game.f(), x, agent);
    const double g = expectation(game.g(), y);
    return {k.mixed(fi.zero, g), k.mixed(fi.one, g)};
  }
  const ConditionalPair gj = conditional_pair(game.g(), y, agent);
  const double f = expectation(game.f(), x);
  return {-k.mixed(f, gj.zero), -k.mixed(f, gj.one)};
}

}  // namespace teamdyn
