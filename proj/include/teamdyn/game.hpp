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

#ifndef TEAMDYN_GAME_HPP_
#define TEAMDYN_GAME_HPP_

#include <cstdint>
#include <span>
#include <string>

#include "teamdyn/boolfn.hpp"

namespace teamdyn {

// 2x2 zero-sum payoff matrix U to team A. Row (column) 1 is Boolean output 1
// of team A (team B), so `a` is paid when both teams output 1 and `d` when
// both output 0.
struct PayoffKernel {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double alpha() const { return a - b - c + d; }
  double entry(bool out_a, bool out_b) const {
    return out_a ? (out_b ? a : b) : (out_b ? c : d);
  }
  // (f, 1-f) U (g, 1-g)^T for output probabilities f, g.
  double mixed(double f, double g) const {
    return f * (g * a + (1.0 - g) * b) + (1.0 - f) * (g * c + (1.0 - g) * d);
  }
};

PayoffKernel matching_pennies();           // (1,-1;-1,1)
PayoffKernel rescaled_matching_pennies();  // (1,0;0,1), value 0.5

// A kernel that passed the uniqueness checks, with its fully mixed Nash
// equilibrium: team A outputs 1 with probability p, team B with probability q.
struct ValidatedKernel {
  PayoffKernel kernel;
  double alpha = 0.0;
  double p = 0.0;
  double q = 0.0;

  double value() const { return kernel.mixed(p, q); }
};

// Throws InputError (with the reason) when alpha == 0 or the kernel is
// dominance solvable, i.e. neither min(a,d) > max(b,c) nor
// max(a,d) < min(b,c) holds.
ValidatedKernel validate_kernel(const PayoffKernel& kernel);

enum class Team { kA, kB };

class TeamGame {
 public:
  TeamGame(BooleanFunction f, BooleanFunction g, const PayoffKernel& kernel);

  const BooleanFunction& f() const { return f_; }
  const BooleanFunction& g() const { return g_; }
  const PayoffKernel& kernel() const { return kernel_.kernel; }
  double alpha() const { return kernel_.alpha; }
  double nash_p() const { return kernel_.p; }
  double nash_q() const { return kernel_.q; }
  // Team A's payoff at the kernel's mixed equilibrium.
  double value() const { return kernel_.value(); }

  int n() const { return f_.arity(); }
  int m() const { return g_.arity(); }
  int agents(Team team) const { return team == Team::kA ? n() : m(); }

  std::string describe() const;

 private:
  BooleanFunction f_;
  BooleanFunction g_;
  ValidatedKernel kernel_;
};

// Team A's payoff U(f(s), g(sigma)); team B receives the negation.
double pure_utility(const TeamGame& game, std::span<const std::uint8_t> s,
                    std::span<const std::uint8_t> sigma);

// (f, 1-f) U (g, 1-g)^T with f, g the expected outputs under x, y.
double expected_team_utility(const TeamGame& game, std::span<const double> x,
                             std::span<const double> y);

// Expected payoff to `team` conditioned on its agent `agent` (zero-based)
// playing allele 0 (`zero`) or allele 1 (`one`). Team B's values are its own
// payoffs, i.e. the negated kernel.
ConditionalPair conditional_agent_utilities(const TeamGame& game,
                                            std::span<const double> x,
                                            std::span<const double> y,
                                            Team team, int agent);

}  // namespace teamdyn

#endif  // TEAMDYN_GAME_HPP_
