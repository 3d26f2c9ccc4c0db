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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "teamdyn/analysis.hpp"
#include "teamdyn/errors.hpp"

namespace teamdyn {

CeCertificate certify_correlated_equilibrium(const TeamGame& game,
                                             std::span<const double> pi,
                                             double tol) {
  const int n = game.n(), m = game.m();
  const int agents = n + m;
  if (agents > kMaxProfileAgents) {
    throw CapacityError("profile table needs n + m <= " +
                        std::to_string(kMaxProfileAgents));
  }
  const std::size_t cells = std::size_t{1} << agents;
  if (pi.size() != cells) {
    throw InputError("distribution has " + std::to_string(pi.size()) +
                     " cells, expected " + std::to_string(cells));
  }
  double total = 0.0;
  for (double v : pi) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InputError("distribution entries must be finite and nonnegative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InputError("distribution sums to " + std::to_string(total));
  }

  const std::uint32_t mask_a = (std::uint32_t{1} << n) - 1;
  // Team A's payoff at each pure profile.
  std::vector<double> payoff(cells);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    const auto s = static_cast<std::uint32_t>(idx) & mask_a;
    const auto sigma = static_cast<std::uint32_t>(idx) >> n;
    payoff[idx] = game.kernel().entry(game.f().at(s), game.g().at(sigma));
  }

  CeCertificate cert;
  cert.min_ce_slack = std::numeric_limits<double>::infinity();
  cert.min_cce_slack = std::numeric_limits<double>::infinity();
  double expected = 0.0;
  for (std::size_t idx = 0; idx < cells; ++idx) expected += payoff[idx] * pi[idx];

  for (int agent = 0; agent < agents; ++agent) {
    const Team team = agent < n ? Team::kA : Team::kB;
    const int local = agent < n ? agent : agent - n;
    const double sign = team == Team::kA ? 1.0 : -1.0;
    const std::size_t bit = std::size_t{1} << agent;

    for (int recommended = 0; recommended < 2; ++recommended) {
      const int deviation = 1 - recommended;
      double slack = 0.0;
      for (std::size_t idx = 0; idx < cells; ++idx) {
        if (((idx & bit) != 0) != (recommended == 1) || pi[idx] == 0.0) continue;
        const std::size_t flipped = idx ^ bit;
        slack += sign * (payoff[idx] - payoff[flipped]) * pi[idx];
      }
      cert.ce.push_back({team, local, recommended, deviation, slack});
      cert.min_ce_slack = std::min(cert.min_ce_slack, slack);
    }
    for (int deviation = 0; deviation < 2; ++deviation) {
      double deviated = 0.0;
      for (std::size_t idx = 0; idx < cells; ++idx) {
        const std::size_t target =
            deviation == 1 ? (idx | bit) : (idx & ~bit);
        deviated += payoff[target] * pi[idx];
      }
      const double slack = sign * (expected - deviated);
      cert.cce.push_back({team, local, deviation, slack});
      cert.min_cce_slack = std::min(cert.min_cce_slack, slack);
    }
  }
  cert.is_ce = cert.min_ce_slack >= -tol;
  cert.is_cce = cert.min_cce_slack >= -tol;
  return cert;
}

}  // namespace teamdyn
