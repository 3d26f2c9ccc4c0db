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

// Brute-force references. Nothing here calls into boolfn's expectation
// routines, the game's utility helpers or the dynamics fields: every
// quantity is recomputed by plain enumeration over explicit assignments.

#ifndef TEAMDYN_ORACLE_HPP_
#define TEAMDYN_ORACLE_HPP_

#include <span>
#include <vector>

#include "teamdyn/boolfn.hpp"
#include "teamdyn/dynamics.hpp"
#include "teamdyn/game.hpp"

namespace teamdyn::oracle {

inline constexpr int kMaxOracleAgents = 16;

// Sum over all 2^n assignments of f(s) * prod_i Pr[s_i].
double brute_expectation(const BooleanFunction& f, std::span<const double> x);

// Enumerates s_{-i} with gene i fixed.
ConditionalPair brute_conditional_pair(const BooleanFunction& f,
                                       std::span<const double> x, int gene);

// Enumerates every (s, sigma) with product weights.
double brute_expected_team_utility(const TeamGame& game,
                                   std::span<const double> x,
                                   std::span<const double> y);

// Enumerates (s_{-i}, sigma) (or (s, sigma_{-j}) for team B) with the agent's
// allele fixed; team B's payoffs are negated.
ConditionalPair brute_conditional_utilities(const TeamGame& game,
                                            std::span<const double> x,
                                            std::span<const double> y,
                                            Team team, int agent);

// Replicator field assembled from brute_conditional_utilities; the rescaled
// variant divides by alpha.
std::vector<double> brute_field(const TeamGame& game, FieldKind kind,
                                std::span<const double> z);

// Explicit Euler with per-step clamping to [0,1]; returns the state at T.
std::vector<double> reference_integrate(const TeamGame& game,
                                        const SystemState& start, double T,
                                        double step,
                                        FieldKind kind = FieldKind::kRescaled);

// Central differences of brute_expectation. x must be interior and
// h in (0, 1e-3].
std::vector<double> finite_difference_gradient(const BooleanFunction& f,
                                               std::span<const double> x,
                                               double h);

// Binds a game and enforces the n + m cap up front.
class EnumerationOracle {
 public:
  explicit EnumerationOracle(const TeamGame& game);

  const TeamGame& game() const { return game_; }
  double expected_team_utility(std::span<const double> x,
                               std::span<const double> y) const {
    return brute_expected_team_utility(game_, x, y);
  }
  ConditionalPair conditional_utilities(std::span<const double> x,
                                        std::span<const double> y, Team team,
                                        int agent) const {
    return brute_conditional_utilities(game_, x, y, team, agent);
  }

 private:
  const TeamGame& game_;
};

}  // namespace teamdyn::oracle

#endif  // TEAMDYN_ORACLE_HPP_
