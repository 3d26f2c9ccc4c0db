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
#include <string>

#include "teamdyn/analysis.hpp"
#include "teamdyn/errors.hpp"

namespace teamdyn {
namespace {

// Trapezoidal integration of per-sample vectors over [t_0, horizon]. The
// last partial interval is closed with linearly interpolated values.
class TrapezoidAccumulator {
 public:
  explicit TrapezoidAccumulator(std::size_t width)
      : sum_(width, 0.0), prev_(width, 0.0) {}

  // Returns false once the horizon has been reached.
  bool add(double t, const std::vector<double>& values, double horizon) {
    if (!started_) {
      started_ = true;
      t_prev_ = t;
      t_start_ = t;
      prev_ = values;
      return t < horizon;
    }
    double t_end = t;
    double weight = 1.0;
    if (t > horizon) {
      weight = (horizon - t_prev_) / (t - t_prev_);
      t_end = horizon;
    }
    const double dt = t_end - t_prev_;
    for (std::size_t i = 0; i < sum_.size(); ++i) {
      const double v_end = prev_[i] + weight * (values[i] - prev_[i]);
      sum_[i] += 0.5 * dt * (prev_[i] + v_end);
    }
    t_prev_ = t_end;
    prev_ = values;
    return t_end < horizon;
  }

  double span() const { return t_prev_ - t_start_; }
  std::vector<double> averages() const {
    std::vector<double> out(sum_.size(), 0.0);
    const double length = span();
    if (length > 0.0) {
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = sum_[i] / length;
    } else {
      out = prev_;
    }
    return out;
  }

 private:
  std::vector<double> sum_;
  std::vector<double> prev_;
  double t_prev_ = 0.0;
  double t_start_ = 0.0;
  bool started_ = false;
};

// Product weights of all 2^(n+m) pure profiles at state z.
void profile_weights(std::span<const double> z, std::vector<double>& out) {
  out.assign(std::size_t{1} << z.size(), 0.0);
  out[0] = 1.0;
  std::size_t filled = 1;
  for (double zi : z) {
    for (std::size_t s = 0; s < filled; ++s) {
      const double w = out[s];
      out[s] = w * zi;
      out[s + filled] = w * (1.0 - zi);
    }
    filled *= 2;
  }
}

void check_profile_capacity(const TeamGame& game) {
  if (game.n() + game.m() > kMaxProfileAgents) {
    throw CapacityError("profile table needs n + m <= " +
                        std::to_string(kMaxProfileAgents) + ", got " +
                        std::to_string(game.n() + game.m()));
  }
}

double resolve_horizon(const Trajectory& trajectory, bool use_integer_periods,
                       double period) {
  const double span = trajectory.time(trajectory.size() - 1) - trajectory.time(0);
  if (!use_integer_periods) return trajectory.time(trajectory.size() - 1);
  if (!(period > 0.0)) throw InputError("integer-period averaging needs period > 0");
  const double count = std::floor(span / period * (1.0 + 1e-12));
  if (count < 1.0) {
    throw InputError("trajectory is shorter than one period");
  }
  return trajectory.time(0) + count * period;
}

}  // namespace

TimeAverages time_averages(const TeamGame& game, const Trajectory& trajectory,
                           bool use_integer_periods, double period,
                           bool with_profile) {
  if (trajectory.empty()) throw InputError("empty trajectory");
  if (with_profile) check_profile_capacity(game);
  const double horizon = resolve_horizon(trajectory, use_integer_periods, period);
  const int n = game.n(), m = game.m();

  // Layout: f, g, uA, then (u0, u1, u_hat) per agent of A then B.
  const std::size_t width = 3 + 3 * static_cast<std::size_t>(n + m);
  TrapezoidAccumulator acc(width);
  std::vector<double> values(width);
  std::vector<double> weights;
  std::optional<TrapezoidAccumulator> profile_acc;
  if (with_profile) {
    profile_acc.emplace(std::size_t{1} << (n + m));
  }

  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const auto x = trajectory.x(k);
    const auto y = trajectory.y(k);
    values[0] = trajectory.f(k);
    values[1] = trajectory.g(k);
    values[2] = trajectory.utility(k);
    std::size_t slot = 3;
    for (int i = 0; i < n; ++i, slot += 3) {
      const auto u = conditional_agent_utilities(game, x, y, Team::kA, i);
      values[slot] = u.zero;
      values[slot + 1] = u.one;
      values[slot + 2] = x[i] * u.zero + (1.0 - x[i]) * u.one;
    }
    for (int j = 0; j < m; ++j, slot += 3) {
      const auto v = conditional_agent_utilities(game, x, y, Team::kB, j);
      values[slot] = v.zero;
      values[slot + 1] = v.one;
      values[slot + 2] = y[j] * v.zero + (1.0 - y[j]) * v.one;
    }
    if (profile_acc) {
      profile_weights(trajectory.state(k), weights);
      profile_acc->add(trajectory.time(k), weights, horizon);
    }
    if (!acc.add(trajectory.time(k), values, horizon)) break;
  }

  const auto avg = acc.averages();
  TimeAverages out;
  out.horizon = acc.span();
  out.f_bar = avg[0];
  out.g_bar = avg[1];
  out.utility_bar = avg[2];
  std::size_t slot = 3;
  for (int i = 0; i < n + m; ++i, slot += 3) {
    AgentAverages a;
    a.team = i < n ? Team::kA : Team::kB;
    a.agent = i < n ? i : i - n;
    a.u0 = avg[slot];
    a.u1 = avg[slot + 1];
    a.u_hat = avg[slot + 2];
    out.agents.push_back(a);
  }
  if (profile_acc) out.profile = profile_acc->averages();
  return out;
}

std::vector<double> empirical_profile_distribution(const TeamGame& game,
                                                   const Trajectory& trajectory,
                                                   double horizon) {
  if (trajectory.empty()) throw InputError("empty trajectory");
  check_profile_capacity(game);
  TrapezoidAccumulator acc(std::size_t{1} << (game.n() + game.m()));
  std::vector<double> weights;
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    profile_weights(trajectory.state(k), weights);
    if (!acc.add(trajectory.time(k), weights, horizon)) break;
  }
  return acc.averages();
}

}  // namespace teamdyn
